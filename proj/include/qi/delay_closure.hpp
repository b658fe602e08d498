// Nearest quadratically invariant transmission delays.
//
// Given propagation delays p (n_y x n_u) and desired transmission delays
// t~ (n_u x n_y), find t closest to t~ subject to
//
//   t_ki + p_ij + t_jl >= t_kl   for all i,j,k,l,      t >= 0,
//
// optionally with t >= t~ (subset) or t <= t~ (superset). 1- and inf-norm
// objectives are linear programs; the 2-norm is a Euclidean projection onto
// the same polyhedron. The superset problem has a closed form via the
// (min,+) closure of t~ under p.
#ifndef QI_DELAY_CLOSURE_HPP
#define QI_DELAY_CLOSURE_HPP

#include <optional>
#include <string>

#include "qi/simplex.hpp"
#include "qi/types.hpp"

namespace qi {

enum class NearestMode { Set, Subset, Superset };
enum class Norm { One, Two, Inf };
enum class SolverKind { MinPlus, Simplex, Dykstra };

struct NearestQuery {
  NearestMode mode = NearestMode::Set;
  Norm norm = Norm::One;
  /// inf-norm only: re-solve minimising the 1-norm at the optimal inf-norm value.
  bool tiebreak_secondary_one_norm = false;
  /// Feasibility tolerance for the returned delays, in (0, 1e-2].
  double tolerance = 1e-9;

  void validate() const;
};

struct NearestResult {
  DelayMatrix t_out;
  /// ||vec(t_out - t~)|| in the query norm.
  double objective = 0.0;
  NearestMode mode = NearestMode::Set;
  Norm norm = Norm::One;
  SolverKind solver = SolverKind::Simplex;
  /// Min-plus steps, simplex pivots, or Dykstra sweeps.
  int iterations = 0;
  /// Simplex: constraint multipliers of the (final) LP.
  std::optional<Eigen::VectorXd> duals;
  /// Dykstra: largest QI/bound violation of t_out.
  std::optional<double> max_violation;
};

struct LPBuildOptions {
  /// Drop rows with k == j or i == l; with t >= 0 and p >= 0 they read
  /// t_ki + p_ij >= 0 or p_ij + t_jl >= 0 and never bind.
  bool prune_vacuous = false;
  /// Adds t_kl <= upper_bound rows.
  std::optional<double> upper_bound;
};

/// Delay variable (k,l) is index k * n_y + l. 1-norm set mode appends one
/// slack per cell; inf-norm appends a single global slack.
LPInstance buildLP(const DelayMatrix& ttilde, const DelayMatrix& p, const NearestQuery& query,
                   const LPBuildOptions& options = {});

/// T_{m+1} = min(T_m, T_m (x) p (x) T_m) from T_0 = t~ until T stops changing.
/// The result is the entrywise largest QI t with t <= t~. Infinite entries
/// are handled natively. The objective is reported in `norm`.
NearestResult minplusSuperset(const DelayMatrix& ttilde, const DelayMatrix& p, Norm norm = Norm::One);

/// Dispatches on query.norm: simplex for 1/inf, Dykstra projection for 2.
NearestResult solveClosest(const DelayMatrix& ttilde, const DelayMatrix& p, const NearestQuery& query,
                           const LPBuildOptions& options = {true, std::nullopt});

struct DykstraOptions {
  double step_tolerance = 1e-9;
  int max_sweeps = 10000;
};

/// Euclidean projection of t~ onto the QI polyhedron for the query mode.
NearestResult projectClosest(const DelayMatrix& ttilde, const DelayMatrix& p, NearestMode mode,
                             const DykstraOptions& options = {});

/// Norm of vec(t - t~); cells where both are +inf count as zero.
double deltaNorm(const DelayMatrix& t, const DelayMatrix& ttilde, Norm norm);

/// Largest amount by which t violates the QI rows or the mode bounds.
double maxViolation(const DelayMatrix& t, const DelayMatrix& ttilde, const DelayMatrix& p, NearestMode mode);

std::string toString(NearestMode mode);
std::string toString(Norm norm);
std::string toString(SolverKind solver);

}  // namespace qi

#endif  // QI_DELAY_CLOSURE_HPP
