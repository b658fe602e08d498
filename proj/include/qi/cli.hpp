// The `qi` command-line tool, as a library so tests can drive it in-process.
#ifndef QI_CLI_HPP
#define QI_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qi/types.hpp"

namespace qi::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kSolverFailure = 3 };

/// Everything a command prints. Keys serialise sorted; only timing_ms
/// varies between identical invocations.
struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::object();
  double timing_ms = 0.0;
  std::string version = kVersion;

  nlohmann::json toJson() const;
};

/// 1-based, row-major; +inf as the string "inf".
nlohmann::json matrixJson(const BinaryPattern& X);
nlohmann::json matrixJson(const DelayMatrix& D);

/// Shape plus FNV-1a digest of the canonical text form.
nlohmann::json digest(const std::string& canonical_text, Eigen::Index rows, Eigen::Index cols);

/// argv[0] is the program name. Writes JSON (or --plain text) to `out` and
/// diagnostics to `err`; returns the process exit code.
int runCommand(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace qi::cli

#endif  // QI_CLI_HPP
