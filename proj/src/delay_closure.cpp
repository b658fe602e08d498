#include "qi/delay_closure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qi/algebra.hpp"

namespace qi {

std::string toString(NearestMode mode) {
  switch (mode) {
    case NearestMode::Set: return "set";
    case NearestMode::Subset: return "subset";
    case NearestMode::Superset: return "superset";
  }
  return "unknown";
}

std::string toString(Norm norm) {
  switch (norm) {
    case Norm::One: return "1";
    case Norm::Two: return "2";
    case Norm::Inf: return "inf";
  }
  return "unknown";
}

std::string toString(SolverKind solver) {
  switch (solver) {
    case SolverKind::MinPlus: return "minplus";
    case SolverKind::Simplex: return "simplex";
    case SolverKind::Dykstra: return "dykstra";
  }
  return "unknown";
}

void NearestQuery::validate() const {
  if (!(tolerance > 0.0 && tolerance <= 1e-2)) throw ParameterError("NearestQuery: tolerance must lie in (0, 1e-2]");
}

namespace {

void requireConformant(const DelayMatrix& t, const DelayMatrix& p, const char* op) {
  if (t.rows() != p.cols() || t.cols() != p.rows())
    throw DimensionError(std::string(op) + ": propagation delays must be " + std::to_string(t.cols()) + "x" +
                         std::to_string(t.rows()));
  requireDelay(t, op);
  requireDelay(p, op);
}

void requireFinite(const DelayMatrix& ttilde, const char* op) {
  if (!ttilde.allFinite())
    throw ParameterError(std::string(op) +
                         ": infinite transmission delays are unsupported here; map them to a finite R first");
}

LPConstraint qiRow(Eigen::Index ny, Eigen::Index k, Eigen::Index i, Eigen::Index j, Eigen::Index l, double pij) {
  std::map<int, double> merged;
  merged[static_cast<int>(k * ny + i)] += 1.0;
  merged[static_cast<int>(j * ny + l)] += 1.0;
  merged[static_cast<int>(k * ny + l)] -= 1.0;
  LPConstraint row;
  for (const auto& [var, coeff] : merged)
    if (coeff != 0.0) row.coeffs.emplace_back(var, coeff);
  row.rel = Relation::GreaterEqual;
  row.rhs = -pij;
  return row;
}

DelayMatrix unvec(const Eigen::VectorXd& x, Eigen::Index nu, Eigen::Index ny) {
  DelayMatrix t(nu, ny);
  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l) t(k, l) = x[k * ny + l];
  return t;
}

// Adds rows pinning |t - t~| <= bound cellwise (tiebreak stage).
void addCellBand(LPInstance& lp, const DelayMatrix& ttilde, double bound) {
  const Eigen::Index ny = ttilde.cols();
  for (Eigen::Index k = 0; k < ttilde.rows(); ++k)
    for (Eigen::Index l = 0; l < ny; ++l) {
      const int v = static_cast<int>(k * ny + l);
      lp.constraints.push_back({{{v, 1.0}}, Relation::LessEqual, ttilde(k, l) + bound});
      lp.constraints.push_back({{{v, 1.0}}, Relation::GreaterEqual, ttilde(k, l) - bound});
    }
}

}  // namespace

double deltaNorm(const DelayMatrix& t, const DelayMatrix& ttilde, Norm norm) {
  detail::requireSameShape(t.rows(), t.cols(), ttilde.rows(), ttilde.cols(), "deltaNorm");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < t.rows(); ++k)
    for (Eigen::Index l = 0; l < t.cols(); ++l) {
      if (t(k, l) == ttilde(k, l)) continue;
      const double d = std::abs(t(k, l) - ttilde(k, l));
      switch (norm) {
        case Norm::One: acc += d; break;
        case Norm::Two: acc += d * d; break;
        case Norm::Inf: acc = std::max(acc, d); break;
      }
    }
  return norm == Norm::Two ? std::sqrt(acc) : acc;
}

double maxViolation(const DelayMatrix& t, const DelayMatrix& ttilde, const DelayMatrix& p, NearestMode mode) {
  double worst = 0.0;
  const Eigen::Index nu = t.rows(), ny = t.cols();
  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l) {
      worst = std::max(worst, -t(k, l));
      if (mode == NearestMode::Subset) worst = std::max(worst, ttilde(k, l) - t(k, l));
      if (mode == NearestMode::Superset) worst = std::max(worst, t(k, l) - ttilde(k, l));
      for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = 0; j < nu; ++j) {
          const double path = t(k, i) + p(i, j) + t(j, l);
          if (path < t(k, l)) worst = std::max(worst, t(k, l) - path);
        }
    }
  return worst;
}

LPInstance buildLP(const DelayMatrix& ttilde, const DelayMatrix& p, const NearestQuery& query,
                   const LPBuildOptions& options) {
  requireConformant(ttilde, p, "buildLP");
  requireFinite(ttilde, "buildLP");
  if (query.norm == Norm::Two) throw ParameterError("buildLP: the 2-norm problem is not a linear program");
  if (options.upper_bound && !(*options.upper_bound >= 0.0 && std::isfinite(*options.upper_bound)))
    throw ParameterError("buildLP: upper bound must be finite and nonnegative");

  const Eigen::Index nu = ttilde.rows(), ny = ttilde.cols();
  const int nt = static_cast<int>(nu * ny);
  const bool cell_slacks = query.norm == Norm::One && query.mode == NearestMode::Set;
  const bool global_slack = query.norm == Norm::Inf;

  LPInstance lp;
  lp.num_vars = nt + (cell_slacks ? nt : 0) + (global_slack ? 1 : 0);
  lp.objective.assign(lp.num_vars, 0.0);
  lp.var_lower_bounds.assign(lp.num_vars, 0.0);
  const int s_global = nt;

  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l) {
      const int v = static_cast<int>(k * ny + l);
      if (query.mode == NearestMode::Subset) lp.var_lower_bounds[v] = ttilde(k, l);
    }

  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l)
      for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = 0; j < nu; ++j) {
          if (std::isinf(p(i, j))) continue;
          if (options.prune_vacuous && (k == j || i == l)) continue;
          lp.constraints.push_back(qiRow(ny, k, i, j, l, p(i, j)));
        }

  if (query.mode == NearestMode::Superset)
    for (Eigen::Index k = 0; k < nu; ++k)
      for (Eigen::Index l = 0; l < ny; ++l)
        lp.constraints.push_back({{{static_cast<int>(k * ny + l), 1.0}}, Relation::LessEqual, ttilde(k, l)});

  if (options.upper_bound)
    for (int v = 0; v < nt; ++v) lp.constraints.push_back({{{v, 1.0}}, Relation::LessEqual, *options.upper_bound});

  const double total = ttilde.sum();
  if (query.norm == Norm::One) {
    switch (query.mode) {
      case NearestMode::Set:
        for (int v = 0; v < nt; ++v) {
          const double target = ttilde(v / ny, v % ny);
          lp.constraints.push_back({{{v, -1.0}, {nt + v, 1.0}}, Relation::GreaterEqual, -target});
          lp.constraints.push_back({{{v, 1.0}, {nt + v, 1.0}}, Relation::GreaterEqual, target});
          lp.objective[nt + v] = 1.0;
        }
        break;
      case NearestMode::Subset:
        for (int v = 0; v < nt; ++v) lp.objective[v] = 1.0;
        lp.objective_offset = -total;
        break;
      case NearestMode::Superset:
        for (int v = 0; v < nt; ++v) lp.objective[v] = -1.0;
        lp.objective_offset = total;
        break;
    }
  } else {
    for (int v = 0; v < nt; ++v) {
      const double target = ttilde(v / ny, v % ny);
      if (query.mode != NearestMode::Superset)
        lp.constraints.push_back({{{v, -1.0}, {s_global, 1.0}}, Relation::GreaterEqual, -target});
      if (query.mode != NearestMode::Subset)
        lp.constraints.push_back({{{v, 1.0}, {s_global, 1.0}}, Relation::GreaterEqual, target});
    }
    lp.objective[s_global] = 1.0;
  }
  return lp;
}

NearestResult minplusSuperset(const DelayMatrix& ttilde, const DelayMatrix& p, Norm norm) {
  requireConformant(ttilde, p, "minplusSuperset");
  NearestResult result;
  result.mode = NearestMode::Superset;
  result.norm = norm;
  result.solver = SolverKind::MinPlus;
  DelayMatrix T = ttilde;
  const int cap = 64;
  for (;;) {
    DelayMatrix next = minplusAdd(T, minplusMul(minplusMul(T, p), T));
    if (next == T) break;
    T = std::move(next);
    if (++result.iterations > cap) throw SolverError("minplusSuperset: no fixed point after 64 steps");
  }
  result.objective = deltaNorm(T, ttilde, norm);
  result.t_out = std::move(T);
  return result;
}

NearestResult solveClosest(const DelayMatrix& ttilde, const DelayMatrix& p, const NearestQuery& query,
                           const LPBuildOptions& options) {
  query.validate();
  if (query.norm == Norm::Two) {
    requireConformant(ttilde, p, "solveClosest");
    requireFinite(ttilde, "solveClosest");
    NearestResult result = projectClosest(ttilde, p, query.mode);
    if (*result.max_violation > query.tolerance)
      throw SolverError("solveClosest: projection residual " + std::to_string(*result.max_violation) +
                        " exceeds tolerance");
    return result;
  }

  const LPInstance lp = buildLP(ttilde, p, query, options);
  LPSolution sol = solveSimplex(lp);
  if (sol.status != LPStatus::Optimal)
    throw InfeasibleError("solveClosest: LP reported " + toString(sol.status) +
                          ", which cannot happen for a well-formed instance");
  int iterations = sol.iterations;

  if (query.norm == Norm::Inf && query.tiebreak_secondary_one_norm) {
    NearestQuery second = query;
    second.norm = Norm::One;
    LPInstance lp2 = buildLP(ttilde, p, second, options);
    addCellBand(lp2, ttilde, sol.objective + query.tolerance);
    sol = solveSimplex(lp2);
    if (sol.status != LPStatus::Optimal)
      throw InfeasibleError("solveClosest: tiebreak LP reported " + toString(sol.status));
    iterations += sol.iterations;
  }

  NearestResult result;
  result.mode = query.mode;
  result.norm = query.norm;
  result.solver = SolverKind::Simplex;
  result.iterations = iterations;
  result.t_out = unvec(sol.x, ttilde.rows(), ttilde.cols());
  result.objective = deltaNorm(result.t_out, ttilde, query.norm);
  result.duals = std::move(sol.duals);
  const double violation = maxViolation(result.t_out, ttilde, p, query.mode);
  if (violation > query.tolerance)
    throw SolverError("solveClosest: simplex solution violates constraints by " + std::to_string(violation));
  return result;
}

NearestResult projectClosest(const DelayMatrix& ttilde, const DelayMatrix& p, NearestMode mode,
                             const DykstraOptions& options) {
  requireConformant(ttilde, p, "projectClosest");
  requireFinite(ttilde, "projectClosest");
  const Eigen::Index nu = ttilde.rows(), ny = ttilde.cols();
  const Eigen::Index nt = nu * ny;

  // Halfspaces t_a + t_b - t_c >= -p with three distinct cells.
  struct Halfspace {
    Eigen::Index a, b, c;
    double rhs;
  };
  std::vector<Halfspace> halfspaces;
  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l)
      for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = 0; j < nu; ++j) {
          if (k == j || i == l || std::isinf(p(i, j))) continue;
          halfspaces.push_back({k * ny + i, j * ny + l, k * ny + l, -p(i, j)});
        }

  Eigen::VectorXd x0(nt), lower(nt), upper(nt);
  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l) {
      const Eigen::Index v = k * ny + l;
      x0[v] = ttilde(k, l);
      lower[v] = mode == NearestMode::Subset ? ttilde(k, l) : 0.0;
      upper[v] = mode == NearestMode::Superset ? ttilde(k, l) : kInf;
    }

  Eigen::VectorXd x = x0;
  Eigen::VectorXd box_increment = Eigen::VectorXd::Zero(nt);
  std::vector<double> increment(halfspaces.size(), 0.0);  // y_h = -increment[h] * a_h
  int sweeps = 0;
  double step = kInf;
  while (step >= options.step_tolerance) {
    if (sweeps >= options.max_sweeps) {
      const DelayMatrix t = unvec(x, nu, ny);
      throw SolverError("projectClosest: no convergence after " + std::to_string(sweeps) +
                        " sweeps (last step " + std::to_string(step) + ", residual " +
                        std::to_string(maxViolation(t, ttilde, p, mode)) + ")");
    }
    const Eigen::VectorXd before = x;
    for (std::size_t h = 0; h < halfspaces.size(); ++h) {
      const auto& hs = halfspaces[h];
      // z = x - increment * a; project z onto a.z >= rhs.
      const double prev = increment[h];
      const double az = (x[hs.a] + x[hs.b] - x[hs.c]) - 3.0 * prev;
      const double mu = std::max(0.0, (hs.rhs - az) / 3.0);
      const double delta = mu - prev;
      x[hs.a] += delta;
      x[hs.b] += delta;
      x[hs.c] -= delta;
      increment[h] = mu;
    }
    const Eigen::VectorXd z = x + box_increment;
    x = z.cwiseMax(lower).cwiseMin(upper);
    box_increment = z - x;
    step = (x - before).cwiseAbs().maxCoeff();
    ++sweeps;
  }

  // Polish: project t~ onto the affine hull of the constraints Dykstra left
  // active, i.e. min |x - x0|^2 s.t. A x = b, via x = x0 + A^T lambda.
  std::vector<std::pair<std::vector<std::pair<Eigen::Index, double>>, double>> active;
  for (std::size_t h = 0; h < halfspaces.size(); ++h)
    if (increment[h] > 0.0) {
      const auto& hs = halfspaces[h];
      active.push_back({{{hs.a, 1.0}, {hs.b, 1.0}, {hs.c, -1.0}}, hs.rhs});
    }
  for (Eigen::Index v = 0; v < nt; ++v)
    if (box_increment[v] != 0.0) active.push_back({{{v, 1.0}}, box_increment[v] < 0.0 ? lower[v] : upper[v]});
  if (!active.empty()) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(active.size()), nt);
    Eigen::VectorXd b(A.rows());
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      for (const auto& [v, c] : active[r].first) A(r, v) += c;
      b[r] = active[r].second;
    }
    const Eigen::VectorXd lambda = (A * A.transpose()).completeOrthogonalDecomposition().solve(b - A * x0);
    const Eigen::VectorXd polished = x0 + A.transpose() * lambda;
    const DelayMatrix tp = unvec(polished, nu, ny);
    const DelayMatrix td = unvec(x, nu, ny);
    const double near = 1e3 * options.step_tolerance * std::max(1.0, x0.cwiseAbs().maxCoeff());
    if ((polished - x).cwiseAbs().maxCoeff() <= near &&
        maxViolation(tp, ttilde, p, mode) <= maxViolation(td, ttilde, p, mode))
      x = polished;
  }

  NearestResult result;
  result.mode = mode;
  result.norm = Norm::Two;
  result.solver = SolverKind::Dykstra;
  result.iterations = sweeps;
  result.t_out = unvec(x, nu, ny);
  result.objective = deltaNorm(result.t_out, ttilde, Norm::Two);
  result.max_violation = maxViolation(result.t_out, ttilde, p, mode);
  return result;
}

}  // namespace qi
