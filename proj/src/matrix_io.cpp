#include "qi/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace qi {

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    if (pos >= line.size()) break;
    const std::size_t start = pos;
    while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
    tokens.push_back({line.substr(start, pos - start), static_cast<int>(start) + 1});
  }
  return tokens;
}

bool isInfToken(const std::string& s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower == "inf" || lower == "+inf";
}

double parseValue(const Token& tok, int line) {
  if (isInfToken(tok.text)) return kInf;
  double value = 0.0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || std::isnan(value))
    throw ParseError("non-numeric token '" + tok.text + "'", line, tok.column);
  if (std::isinf(value)) throw ParseError("use the token 'inf' for infinite delays", line, tok.column);
  if (value < 0.0) throw ParseError("negative entry '" + tok.text + "'", line, tok.column);
  return value;
}

std::string formatDouble(double v) {
  if (std::isinf(v)) return "inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

ParsedMatrix parseMatrixText(const std::string& text, bool as_delay) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  bool binary = !as_delay;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().text.front() == '#') continue;
    if (rows.empty()) width = tokens.size();
    if (tokens.size() != width)
      throw ParseError("row has " + std::to_string(tokens.size()) + " entries, expected " + std::to_string(width),
                       line_no, tokens.size() > width ? tokens[width].column : 1);
    std::vector<double> row;
    row.reserve(width);
    for (const auto& tok : tokens) {
      row.push_back(parseValue(tok, line_no));
      if (tok.text != "0" && tok.text != "1") binary = false;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("no matrix rows found", line_no, 1);

  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(width);
  if (binary) {
    BinaryPattern X(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r)
      for (Eigen::Index c = 0; c < nc; ++c) X(r, c) = static_cast<std::uint8_t>(rows[r][c]);
    return X;
  }
  DelayMatrix D(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r)
    for (Eigen::Index c = 0; c < nc; ++c) D(r, c) = rows[r][c];
  return D;
}

ParsedMatrix parseMatrixFile(const std::string& path, bool as_delay) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseMatrixText(buf.str(), as_delay);
}

std::string formatMatrix(const BinaryPattern& X) {
  std::string out;
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      if (c) out += ' ';
      out += X(r, c) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string formatMatrix(const DelayMatrix& D) {
  std::string out;
  for (Eigen::Index r = 0; r < D.rows(); ++r) {
    for (Eigen::Index c = 0; c < D.cols(); ++c) {
      if (c) out += ' ';
      out += formatDouble(D(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string formatMatrix(const ParsedMatrix& M) {
  return std::visit([](const auto& m) { return formatMatrix(m); }, M);
}

BinaryPattern asPattern(const ParsedMatrix& M) {
  if (const auto* X = std::get_if<BinaryPattern>(&M)) return *X;
  const auto& D = std::get<DelayMatrix>(M);
  if (!((D.array() == 0.0) || (D.array() == 1.0)).all())
    throw ParameterError("expected a 0/1 sparsity pattern but found delay values");
  return D.cast<std::uint8_t>();
}

DelayMatrix asDelay(const ParsedMatrix& M) {
  if (const auto* D = std::get_if<DelayMatrix>(&M)) return *D;
  return std::get<BinaryPattern>(M).cast<double>();
}

}  // namespace qi
