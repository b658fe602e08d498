// Core matrix types for information-constraint structure.
#ifndef QI_TYPES_HPP
#define QI_TYPES_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qi {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Entries in {0,1}. Controller patterns are n_u x n_y, plant patterns n_y x n_u.
using BinaryPattern = Matrix<std::uint8_t>;

/// Nonnegative extended reals; +inf marks "never" (a structurally zero block).
using DelayMatrix = Matrix<double>;

/// Integer-valued counts (3-hop weights).
using CountMatrix = Matrix<long>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A quadruple (k,i,j,l) failing K_ki G_ij K_jl (1-K_kl) = 0 or
/// t_ki + p_ij + t_jl >= t_kl. Indices are 0-based here; reports add one.
struct QIViolation {
  Eigen::Index k = 0;
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  Eigen::Index l = 0;
  std::optional<double> slack;

  friend bool operator==(const QIViolation&, const QIViolation&) = default;
};

/// Ordering used for every violation list: (k,l,i,j).
inline bool violationLess(const QIViolation& a, const QIViolation& b) {
  if (a.k != b.k) return a.k < b.k;
  if (a.l != b.l) return a.l < b.l;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Solver did not converge, or hit an iteration cap.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// A problem that should always be feasible was reported infeasible.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace qi

#endif  // QI_TYPES_HPP
