#include "qi/subset_heuristics.hpp"

#include <functional>

#include "qi/algebra.hpp"
#include "qi/delay_closure.hpp"
#include "qi/qi_test.hpp"

namespace qi {

namespace {

// Returns true when K_ki (rather than K_jl) should be cleared.
using Chooser = std::function<bool(const QIViolation&)>;
// Recomputes the guiding scores for the current pattern and returns a chooser.
using Refresher = std::function<Chooser(const BinaryPattern&)>;

bool stillViolated(const BinaryPattern& Z, const BinaryPattern& G, const QIViolation& v) {
  return Z(v.k, v.i) && G(v.i, v.j) && Z(v.j, v.l) && !Z(v.k, v.l);
}

SubsetResult disconnect(const BinaryPattern& K, const BinaryPattern& G, Schedule schedule, const Refresher& refresh) {
  requireBinary(K, "closestSubset");
  requireBinary(G, "closestSubset");
  SubsetResult result;
  result.Z = K;
  BinaryPattern& Z = result.Z;
  for (;;) {
    const QIReport report = isQISparsity(Z, G);
    if (report.is_qi) break;
    const Chooser clearFirst = refresh(Z);
    ++result.refreshes;
    const auto& pending = report.violations;
    const std::size_t count = schedule == Schedule::PerDisconnection ? 1 : pending.size();
    for (std::size_t n = 0; n < count; ++n) {
      const QIViolation& v = pending[n];
      if (!stillViolated(Z, G, v)) continue;
      const Link cut = clearFirst(v) ? Link{v.k, v.i} : Link{v.j, v.l};
      Z(cut.first, cut.second) = 0;
      result.removed_links.push_back(cut);
    }
  }
  result.hamming_distance = nnz(K) - nnz(Z);
  return result;
}

}  // namespace

CountMatrix threeHopWeights(const BinaryPattern& K, const BinaryPattern& G) {
  if (K.rows() != G.cols() || K.cols() != G.rows())
    throw DimensionError("threeHopWeights: plant pattern must be the transpose shape of the controller");
  const CountMatrix k = K.cast<long>();
  return k * G.cast<long>() * k;
}

DelayMatrix relaxedDelays(const BinaryPattern& K, const BinaryPattern& G, double R) {
  const DelayMatrix ttilde = sparsityToDelay(K, R);
  const DelayMatrix p = sparsityToDelay(G, R);
  NearestQuery query;
  query.mode = NearestMode::Subset;
  query.norm = Norm::One;
  query.tolerance = 1e-6 * std::max(1.0, R);
  return solveClosest(ttilde, p, query, {true, R}).t_out;
}

SubsetResult subsetByWeights(const BinaryPattern& K, const BinaryPattern& G, const HeuristicConfig& cfg) {
  return disconnect(K, G, cfg.schedule, [&G](const BinaryPattern& Z) -> Chooser {
    CountMatrix w = threeHopWeights(Z, G);
    return [w = std::move(w)](const QIViolation& v) { return w(v.k, v.i) <= w(v.j, v.l); };
  });
}

SubsetResult subsetByRelaxedLP(const BinaryPattern& K, const BinaryPattern& G, const HeuristicConfig& cfg) {
  if (!(cfg.R > 0.0)) throw ParameterError("subsetByRelaxedLP: R must be positive");
  const double tie = 1e-9 * cfg.R;
  return disconnect(K, G, cfg.schedule, [&G, &cfg, tie](const BinaryPattern& Z) -> Chooser {
    DelayMatrix t = relaxedDelays(Z, G, cfg.R);
    return [t = std::move(t), tie](const QIViolation& v) { return t(v.k, v.i) >= t(v.j, v.l) - tie; };
  });
}

SubsetResult closestSubset(const BinaryPattern& K, const BinaryPattern& G, const HeuristicConfig& cfg) {
  return cfg.method == HeuristicMethod::Weights ? subsetByWeights(K, G, cfg) : subsetByRelaxedLP(K, G, cfg);
}

}  // namespace qi
