// Plain-text matrix files: one row per line, whitespace-separated entries,
// `inf` for +infinity, lines starting with `#` are comments.
#ifndef QI_MATRIX_IO_HPP
#define QI_MATRIX_IO_HPP

#include <string>
#include <variant>

#include "qi/types.hpp"

namespace qi {

using ParsedMatrix = std::variant<BinaryPattern, DelayMatrix>;

/// A file whose tokens are all `0` or `1` parses as a BinaryPattern unless
/// as_delay is set. Throws ParseError with 1-based line/column.
ParsedMatrix parseMatrixText(const std::string& text, bool as_delay = false);
ParsedMatrix parseMatrixFile(const std::string& path, bool as_delay = false);

std::string formatMatrix(const BinaryPattern& X);
/// Shortest round-tripping decimal per entry.
std::string formatMatrix(const DelayMatrix& D);
std::string formatMatrix(const ParsedMatrix& M);

/// Throws ParameterError when a delay file holds anything other than 0/1.
BinaryPattern asPattern(const ParsedMatrix& M);
/// Binary files are read as delays of 0 and 1.
DelayMatrix asDelay(const ParsedMatrix& M);

}  // namespace qi

#endif  // QI_MATRIX_IO_HPP
