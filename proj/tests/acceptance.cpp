// End-to-end acceptance run: one PASS/FAIL line per criterion, each with its
// own tolerance and wall-clock budget. Exits nonzero if any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qi/algebra.hpp"
#include "qi/delay_closure.hpp"
#include "qi/oracle.hpp"
#include "qi/qi_test.hpp"
#include "qi/reference_data.hpp"
#include "qi/sparsity_closure.hpp"
#include "qi/subset_heuristics.hpp"
#include "support.hpp"

using namespace qi;
using qi::testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_ms;
  std::function<void(Outcome&)> body;
};

NearestQuery query(NearestMode mode, Norm norm) {
  NearestQuery q;
  q.mode = mode;
  q.norm = norm;
  return q;
}

const NearestMode kModes[] = {NearestMode::Set, NearestMode::Subset, NearestMode::Superset};

// Independent feasibility check of delays for a nearest-delay query.
bool feasible(const DelayMatrix& t, const DelayMatrix& ttilde, const DelayMatrix& p, NearestMode mode, double tol) {
  if (t.minCoeff() < -tol) return false;
  if (mode == NearestMode::Subset && (t - ttilde).minCoeff() < -tol) return false;
  if (mode == NearestMode::Superset && (t - ttilde).maxCoeff() > tol) return false;
  for (Eigen::Index k = 0; k < t.rows(); ++k)
    for (Eigen::Index i = 0; i < t.cols(); ++i)
      for (Eigen::Index j = 0; j < t.rows(); ++j)
        for (Eigen::Index l = 0; l < t.cols(); ++l)
          if (t(k, i) + p(i, j) + t(j, l) < t(k, l) - tol) return false;
  return true;
}

void sparsitySuperset(Outcome& o) {
  const ClosureResult a = closestSuperset(binIdentity(4), reference::plantI());
  const ClosureResult b = closestSuperset(binIdentity(4), reference::plantII());
  o.require(a.Zstar == reference::supersetI(), "Z*_I");
  o.require(b.Zstar == reference::supersetII(), "Z*_II");
  o.require(a.trace.iterations_used <= 2 && b.trace.iterations_used <= 2, "iterations <= 2");
  o.note << "iterations " << a.trace.iterations_used << "/" << b.trace.iterations_used;
}

void delaySuperset(Outcome& o) {
  const DelayMatrix t = reference::transmissionDelays(), p = reference::propagationDelays();
  const NearestResult mp = minplusSuperset(t, p);
  o.require(mp.t_out - t == reference::supersetDelta(), "min-plus delta");
  const NearestResult lp = solveClosest(t, p, query(NearestMode::Superset, Norm::One));
  const double gap = (lp.t_out - mp.t_out).cwiseAbs().maxCoeff();
  o.require(gap <= 1e-9, "LP matrix within 1e-9");
  o.require(std::abs(lp.objective - 11.0) <= 1e-6, "objective 11");
  o.note << "objective " << lp.objective << ", LP/min-plus gap " << gap;
}

void delayObjectives(Outcome& o) {
  const DelayMatrix t = reference::transmissionDelays(), p = reference::propagationDelays();
  struct Row {
    NearestMode mode;
    Norm norm;
    double target, tol;
  };
  const Row rows[] = {
      {NearestMode::Subset, Norm::One, 8.00, 0.10}, {NearestMode::Set, Norm::One, 7.00, 0.10},
      {NearestMode::Subset, Norm::Inf, 2.00, 0.02}, {NearestMode::Set, Norm::Inf, 1.33, 0.02},
      {NearestMode::Subset, Norm::Two, 3.317, 0.01}, {NearestMode::Set, Norm::Two, 2.654, 0.02},
  };
  for (const auto& r : rows) {
    const double v = solveClosest(t, p, query(r.mode, r.norm)).objective;
    o.require(std::abs(v - r.target) <= r.tol, toString(r.mode) + "/" + toString(r.norm));
    o.note << toString(r.mode) << "/" << toString(r.norm) << "=" << v << " ";
  }
}

void oracleSuperset(Outcome& o) {
  long pairs = 0;
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      const BinaryPattern K = qi::testing::patternFromCode(a, 2, 2), G = qi::testing::patternFromCode(b, 2, 2);
      o.require(closestSuperset(K, G).Zstar == oracle::exhaustiveMinimalSuperset(K, G), "n=2 pair");
      ++pairs;
    }
  Rng rng(1001);
  std::uniform_int_distribution<unsigned> code(0, 511);
  for (int n = 0; n < 10000; ++n) {
    const BinaryPattern K = qi::testing::patternFromCode(code(rng), 3, 3), G = qi::testing::patternFromCode(code(rng), 3, 3);
    o.require(closestSuperset(K, G).Zstar == oracle::exhaustiveMinimalSuperset(K, G), "n=3 pair");
    ++pairs;
  }
  o.note << pairs << " pairs";
}

void terminationBound(Outcome& o) {
  Rng rng(1002);
  int worst[5] = {0, 0, 0, 0, 0};
  int slot = 0;
  for (Eigen::Index n : {4, 8, 16, 32, 64}) {
    // Densities around 1/n keep the closures nontrivial at every size.
    std::uniform_real_distribution<double> density(0.5 / n, 3.0 / n);
    const int bound = ceilLog2(n);
    for (int trial = 0; trial < 1000; ++trial) {
      const BinaryPattern K = qi::testing::randomPattern(rng, n, n, std::min(1.0, density(rng) + 1.0 / n));
      const BinaryPattern G = qi::testing::randomPattern(rng, n, n, std::min(1.0, density(rng)));
      const ClosureResult r = closestSuperset(K, G);
      worst[slot] = std::max(worst[slot], r.trace.iterations_used);
      o.require(r.trace.iterations_used <= bound, "iterations bound at n=" + std::to_string(n));
      if (trial < 20) {
        for (int m = 0; m <= bound && m < static_cast<int>(r.trace.iterates.size()); ++m)
          o.require(termExpansion(K, G, m) == r.trace.iterates[m], "term expansion at n=" + std::to_string(n));
      }
    }
    ++slot;
  }
  o.note << "worst iterations n=4..64: " << worst[0] << " " << worst[1] << " " << worst[2] << " " << worst[3] << " "
         << worst[4] << "; term expansion on 100 instances";
}

void mappingEquivalence(Outcome& o) {
  Rng rng(1003);
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  int qi_count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index nu = dim(rng), ny = dim(rng);
    const BinaryPattern K = qi::testing::randomPattern(rng, nu, ny, density(rng));
    const BinaryPattern G = qi::testing::randomPattern(rng, ny, nu, density(rng));
    const bool sparse = isQISparsity(K, G).is_qi;
    qi_count += sparse;
    for (double R : {0.5, 1.0, 10.0})
      o.require(sparse == isQIDelay(sparsityToDelay(K, R), sparsityToDelay(G, R)).is_qi, "verdict mismatch");
  }
  o.note << qi_count << "/1000 QI";
}

double exactObjective(const DelayMatrix& t, const DelayMatrix& p, const NearestQuery& q) {
  const auto sol = oracle::solveRationalLP(oracle::toRational(buildLP(t, p, q)));
  if (sol.status != LPStatus::Optimal) return std::nan("");
  return sol.objective.get_d();
}

void lpCertification(Outcome& o) {
  double worst = 0.0;
  int programs = 0;
  const auto compare = [&](const DelayMatrix& t, const DelayMatrix& p) {
    for (NearestMode mode : kModes)
      for (Norm norm : {Norm::One, Norm::Inf}) {
        const NearestQuery q = query(mode, norm);
        const double f = solveClosest(t, p, q).objective;
        const double e = exactObjective(t, p, q);
        worst = std::max(worst, std::abs(f - e));
        o.require(std::abs(f - e) <= 1e-6, "float vs exact");
        ++programs;
      }
  };
  compare(reference::transmissionDelays(), reference::propagationDelays());
  Rng rng(1004);
  for (int trial = 0; trial < 100; ++trial) compare(qi::testing::randomDelays(rng, 3, 3), qi::testing::randomDelays(rng, 3, 3));
  o.note << programs << " programs, worst gap " << worst;
}

void heuristicSoundness(Outcome& o) {
  const HeuristicConfig configs[] = {
      {HeuristicMethod::Weights, Schedule::PerDisconnection, 1.0},
      {HeuristicMethod::Weights, Schedule::PerPass, 1.0},
      {HeuristicMethod::RelaxedLP, Schedule::PerDisconnection, 1.0},
      {HeuristicMethod::RelaxedLP, Schedule::PerPass, 1.0},
  };
  Rng rng(1005);
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  for (int trial = 0; trial < 5000; ++trial) {
    const Eigen::Index nu = dim(rng), ny = dim(rng);
    const BinaryPattern K = qi::testing::randomPattern(rng, nu, ny, density(rng));
    const BinaryPattern G = qi::testing::randomPattern(rng, ny, nu, density(rng));
    for (const auto& cfg : configs) {
      const SubsetResult r = closestSubset(K, G, cfg);
      o.require(binLeq(r.Z, K), "Z <= K");
      o.require(isQISparsity(r.Z, G).is_qi, "QI output");
    }
  }

  const BinaryPattern Ksym = qi::testing::pattern2(1, 1, 1, 0), Gones = BinaryPattern::Ones(2, 2);
  const long sym = subsetByWeights(Ksym, Gones).hamming_distance;
  o.require(sym == 1 && oracle::exhaustiveMaximalSubset(Ksym, Gones).optimum_distance == 1, "symmetric instance");

  double gap[4] = {0, 0, 0, 0};
  int pairs = 0;
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      const BinaryPattern K = qi::testing::patternFromCode(a, 2, 2), G = qi::testing::patternFromCode(b, 2, 2);
      const long best = oracle::exhaustiveMaximalSubset(K, G).optimum_distance;
      for (int c = 0; c < 4; ++c) {
        const SubsetResult r = closestSubset(K, G, configs[c]);
        o.require(binLeq(r.Z, K) && isQISparsity(r.Z, G).is_qi, "n=2 soundness");
        o.require(r.hamming_distance >= best, "never beats the oracle");
        gap[c] += static_cast<double>(r.hamming_distance - best);
      }
      ++pairs;
    }
  o.note << "20000 runs sound; symmetric distance " << sym << "; mean n=2 gap weights/step " << gap[0] / pairs
         << ", weights/pass " << gap[1] / pairs << ", lp/step " << gap[2] / pairs << ", lp/pass " << gap[3] / pairs;
}

std::vector<DelayMatrix> feasibleSamples(const DelayMatrix& ttilde, const DelayMatrix& p, NearestMode mode,
                                         const DelayMatrix& anchor, Rng& rng, std::size_t want) {
  const Eigen::Index nu = ttilde.rows(), ny = ttilde.cols();
  const double top = ttilde.maxCoeff();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<DelayMatrix> pool{anchor};
  std::vector<DelayMatrix> out;
  const auto keep = [&](const DelayMatrix& t) {
    if (!feasible(t, ttilde, p, mode, 0.0)) return;
    pool.push_back(t);
    out.push_back(t);
  };
  for (long attempt = 0; out.size() < want; ++attempt) {
    const int kind = static_cast<int>(attempt % 4);
    DelayMatrix raw(nu, ny);
    for (Eigen::Index r = 0; r < nu; ++r)
      for (Eigen::Index c = 0; c < ny; ++c) raw(r, c) = 12.0 * unit(rng);
    DelayMatrix t;
    if (kind == 0) {
      // Largest QI point below a random matrix (and below t~ for supersets).
      t = minplusSuperset(mode == NearestMode::Superset ? raw.cwiseMin(ttilde) : raw, p).t_out;
    } else if (kind == 1) {
      // Uniform shifts keep QI; shifting by at least max(t~) clears the subset bound.
      const DelayMatrix& base = pool[static_cast<std::size_t>(unit(rng) * pool.size()) % pool.size()];
      const double c = mode == NearestMode::Superset ? 0.0 : (mode == NearestMode::Subset ? top : 0.0) + 3.0 * unit(rng);
      t = base.array() + c;
    } else if (kind == 2) {
      const DelayMatrix& x = pool[static_cast<std::size_t>(unit(rng) * pool.size()) % pool.size()];
      const DelayMatrix& y = pool[static_cast<std::size_t>(unit(rng) * pool.size()) % pool.size()];
      const double lam = unit(rng);
      t = lam * x + (1.0 - lam) * y;
    } else {
      const double c = mode == NearestMode::Superset ? 0.0 : (mode == NearestMode::Subset ? top : 0.0) + 5.0 * unit(rng);
      t = DelayMatrix::Constant(nu, ny, c);
    }
    keep(t);
  }
  return out;
}

void projectionValidity(Outcome& o) {
  const DelayMatrix t = reference::transmissionDelays(), p = reference::propagationDelays();
  Rng rng(1006);
  for (NearestMode mode : kModes) {
    const NearestResult r = solveClosest(t, p, query(mode, Norm::Two));
    o.require(feasible(r.t_out, t, p, mode, 1e-9), "projection feasible");
    // <t~ - t*, y - t*> <= 0 for every feasible y.
    const Eigen::ArrayXXd g = t - r.t_out;
    double worst = -kInf;
    for (const DelayMatrix& y : feasibleSamples(t, p, mode, r.t_out, rng, 1000))
      worst = std::max(worst, (g * (y - r.t_out).array()).sum());
    o.require(worst <= 1e-6, "VI residual for " + toString(mode));
    o.note << toString(mode) << " residual " << std::max(0.0, worst) << " ";
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "sparsity superset regression", 1.0, sparsitySuperset},
      {2, "delay superset regression", 1000.0, delaySuperset},
      {3, "delay subset/set objectives", 5000.0, delayObjectives},
      {4, "oracle equivalence (superset)", 60000.0, oracleSuperset},
      {5, "termination bound", 60000.0, terminationBound},
      {6, "mapping equivalence", 10000.0, mappingEquivalence},
      {7, "LP certification", 60000.0, lpCertification},
      {8, "heuristic soundness", 60000.0, heuristicSoundness},
      {9, "2-norm projection validity", 30000.0, projectionValidity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms < c.budget_ms;
    const bool pass = o.ok && in_time;
    failures += !pass;
    std::printf("[%s] %d %s: %.3f ms (budget %.0f ms)%s | %s\n", pass ? "PASS" : "FAIL", c.id, c.name, ms, c.budget_ms,
                in_time ? "" : " OVER BUDGET", o.note.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
