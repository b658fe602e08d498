#include <iostream>

#include "qi/cli.hpp"

int main(int argc, char** argv) {
  return qi::cli::runCommand(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
