// Heuristics for a close quadratically invariant sparsity *subset*.
//
// Both walk the violating quadruples (k,i,j,l) in (k,l,i,j) order and break
// each one by clearing either K_ki or K_jl, guided by a score that is
// refreshed on a configurable schedule:
//   - weights:    w = K G K in ordinary integer arithmetic (3-hop counts);
//                 clear K_ki if w_ki <= w_jl, else K_jl.
//   - relaxed_lp: solve the 1-norm subset delay LP with 0 <= t <= R on the
//                 delay image of (K, G); clear K_ki if t*_ki >= t*_jl, else K_jl.
#ifndef QI_SUBSET_HEURISTICS_HPP
#define QI_SUBSET_HEURISTICS_HPP

#include <vector>

#include "qi/sparsity_closure.hpp"
#include "qi/types.hpp"

namespace qi {

enum class HeuristicMethod { RelaxedLP, Weights };
enum class Schedule { PerDisconnection, PerPass };

struct HeuristicConfig {
  HeuristicMethod method = HeuristicMethod::Weights;
  Schedule schedule = Schedule::PerDisconnection;
  double R = 1.0;
};

struct SubsetResult {
  BinaryPattern Z;
  /// In removal order.
  std::vector<Link> removed_links;
  long hamming_distance = 0;
  /// Number of times the guiding scores were recomputed.
  int refreshes = 0;
};

/// w_kl = sum_i sum_j K_ki G_ij K_jl.
CountMatrix threeHopWeights(const BinaryPattern& K, const BinaryPattern& G);

SubsetResult subsetByWeights(const BinaryPattern& K, const BinaryPattern& G, const HeuristicConfig& cfg = {});

SubsetResult subsetByRelaxedLP(const BinaryPattern& K, const BinaryPattern& G, const HeuristicConfig& cfg = {
                                   HeuristicMethod::RelaxedLP, Schedule::PerDisconnection, 1.0});

/// Dispatches on cfg.method.
SubsetResult closestSubset(const BinaryPattern& K, const BinaryPattern& G, const HeuristicConfig& cfg);

/// Relaxed delays t* used by the LP heuristic.
DelayMatrix relaxedDelays(const BinaryPattern& K, const BinaryPattern& G, double R);

}  // namespace qi

#endif  // QI_SUBSET_HEURISTICS_HPP
