// Closest quadratically invariant sparsity superset.
//
// Iterates Z_0 = K, Z_{m+1} = Z_m + Z_m G Z_m over the binary algebra. The
// sequence reaches its fixed point after at most ceil(log2 min(n_u, n_y))
// growth steps, and the fixed point is the unique sparsest QI pattern
// containing K.
#ifndef QI_SPARSITY_CLOSURE_HPP
#define QI_SPARSITY_CLOSURE_HPP

#include <utility>
#include <vector>

#include "qi/types.hpp"

namespace qi {

using Link = std::pair<Eigen::Index, Eigen::Index>;

struct ClosureTrace {
  /// Z_0 .. Z_{m*+1}; the last two entries are equal.
  std::vector<BinaryPattern> iterates;
  /// m*, the number of steps that changed the pattern.
  int iterations_used = 0;
  /// Cells set in the result but not in K, ordered by (k,l).
  std::vector<Link> added_links;
};

struct ClosureResult {
  BinaryPattern Zstar;
  ClosureTrace trace;
};

ClosureResult closestSuperset(const BinaryPattern& K, const BinaryPattern& G);

/// ceil(log2 n) for n >= 1.
int ceilLog2(Eigen::Index n);

/// sum_{s=0}^{2^m - 1} K (G K)^s, evaluated term by term.
BinaryPattern termExpansion(const BinaryPattern& K, const BinaryPattern& G, int m);

/// sum_{s=0}^{n-1} K (G K)^s with n = min(n_u, n_y).
BinaryPattern minimalTermCount(const BinaryPattern& K, const BinaryPattern& G);

/// K (G K)^r.
BinaryPattern pathPower(const BinaryPattern& K, const BinaryPattern& G, int r);

}  // namespace qi

#endif  // QI_SPARSITY_CLOSURE_HPP
