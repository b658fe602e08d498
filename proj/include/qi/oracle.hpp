// Brute-force references: exhaustive pattern search and an exact rational
// simplex. These deliberately share no code with the closure, heuristic or
// floating-point LP paths they are used to check.
#ifndef QI_ORACLE_HPP
#define QI_ORACLE_HPP

#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qi/simplex.hpp"
#include "qi/types.hpp"

namespace qi::oracle {

/// Largest number of free cells either search will enumerate.
inline constexpr int kMaxFreeCells = 20;

/// Direct quadruple check of K_ki G_ij K_jl (1 - K_kl) = 0.
bool satisfiesQI(const BinaryPattern& K, const BinaryPattern& G);

/// Sparsest Z with Z >= K and Z G Z <= Z, by enumerating every way of
/// switching on K's zero cells. Throws Error if the minimiser is not unique.
BinaryPattern exhaustiveMinimalSuperset(const BinaryPattern& K, const BinaryPattern& G);

struct SubsetOptimum {
  BinaryPattern Z;
  long optimum_distance = 0;
};

/// Densest QI Z <= K. Among optima, the row-major lexicographically
/// smallest one is returned.
SubsetOptimum exhaustiveMaximalSubset(const BinaryPattern& K, const BinaryPattern& G);

struct RationalConstraint {
  std::vector<std::pair<int, mpq_class>> coeffs;
  Relation rel = Relation::GreaterEqual;
  mpq_class rhs;
};

struct RationalLP {
  int num_vars = 0;
  std::vector<mpq_class> objective;
  mpq_class objective_offset;
  std::vector<RationalConstraint> constraints;
  std::vector<mpq_class> var_lower_bounds;
};

/// Lossless: every finite double is a dyadic rational.
RationalLP toRational(const LPInstance& lp);

struct RationalSolution {
  LPStatus status = LPStatus::Optimal;
  mpq_class objective;
  std::vector<mpq_class> x;
  int pivots = 0;
};

/// Exact optimum by a textbook two-phase simplex (an artificial on every
/// row) with Bland's rule.
RationalSolution solveRationalLP(const RationalLP& lp);

}  // namespace qi::oracle

#endif  // QI_ORACLE_HPP
