// Linear programs in inequality form and a dense primal simplex solver.
#ifndef QI_SIMPLEX_HPP
#define QI_SIMPLEX_HPP

#include <string>
#include <utility>
#include <vector>

#include "qi/types.hpp"

namespace qi {

enum class Relation { GreaterEqual, LessEqual };

struct LPConstraint {
  /// (variable index, coefficient); indices unique within a row.
  std::vector<std::pair<int, double>> coeffs;
  Relation rel = Relation::GreaterEqual;
  double rhs = 0.0;
};

/// minimize  objective . x + objective_offset
/// s.t.      every constraint, x >= var_lower_bounds
struct LPInstance {
  int num_vars = 0;
  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<LPConstraint> constraints;
  std::vector<double> var_lower_bounds;

  /// Throws ParameterError on bad indices, sizes or non-finite data.
  void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
  LPStatus status = LPStatus::Optimal;
  double objective = 0.0;
  Eigen::VectorXd x;
  /// One multiplier per constraint: >= 0 on >= rows, <= 0 on <= rows, with
  /// objective - sum_i duals_i a_i >= 0 componentwise at optimality.
  Eigen::VectorXd duals;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double cost_tolerance = 1e-9;
  double feasibility_tolerance = 1e-7;
  int max_iterations = 200000;
};

/// Two-phase tableau simplex with Bland's smallest-index rule. Throws
/// SolverError when the iteration cap is hit.
LPSolution solveSimplex(const LPInstance& lp, const SimplexOptions& options = {});

std::string toString(LPStatus status);

}  // namespace qi

#endif  // QI_SIMPLEX_HPP
