#include "qi/simplex.hpp"

#include <cmath>
#include <limits>

namespace qi {

void LPInstance::validate() const {
  if (num_vars < 0) throw ParameterError("LPInstance: negative variable count");
  if (static_cast<int>(objective.size()) != num_vars)
    throw ParameterError("LPInstance: objective size does not match variable count");
  if (static_cast<int>(var_lower_bounds.size()) != num_vars)
    throw ParameterError("LPInstance: lower bound count does not match variable count");
  for (double c : objective)
    if (!std::isfinite(c)) throw ParameterError("LPInstance: non-finite objective coefficient");
  for (double lb : var_lower_bounds)
    if (!std::isfinite(lb)) throw ParameterError("LPInstance: non-finite lower bound");
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    const auto& row = constraints[r];
    if (!std::isfinite(row.rhs)) throw ParameterError("LPInstance: row " + std::to_string(r) + " has non-finite rhs");
    for (const auto& [var, coeff] : row.coeffs) {
      if (var < 0 || var >= num_vars)
        throw ParameterError("LPInstance: row " + std::to_string(r) + " references variable " + std::to_string(var));
      if (!std::isfinite(coeff)) throw ParameterError("LPInstance: non-finite coefficient");
    }
  }
}

std::string toString(LPStatus status) {
  switch (status) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DenseSimplex {
 public:
  DenseSimplex(const LPInstance& lp, const SimplexOptions& options) : lp_(lp), opt_(options) {}

  LPSolution run() {
    setup();
    LPSolution sol;
    if (num_art_ > 0) {
      if (!optimize(phase1_row_, num_cols_)) throw SolverError("simplex: phase 1 reported unbounded");
      if (-T_(phase1_row_, rhs_col_) > opt_.feasibility_tolerance) {
        sol.status = LPStatus::Infeasible;
        sol.iterations = iterations_;
        return sol;
      }
      evictArtificials();
    }
    if (!optimize(phase2_row_, art_begin_)) {
      sol.status = LPStatus::Unbounded;
      sol.iterations = iterations_;
      return sol;
    }
    extract(sol);
    return sol;
  }

 private:
  void setup() {
    const int n = lp_.num_vars;
    const int m = static_cast<int>(lp_.constraints.size());
    m_ = m;
    sign_.assign(m, 1.0);
    slack_coef_.assign(m, 1.0);
    basis_.assign(m, -1);

    // First pass decides normalisation and which rows need artificials.
    std::vector<double> shifted_rhs(m);
    num_art_ = 0;
    for (int r = 0; r < m; ++r) {
      const auto& row = lp_.constraints[r];
      double b = row.rhs;
      for (const auto& [var, coeff] : row.coeffs) b -= coeff * lp_.var_lower_bounds[var];
      double g = row.rel == Relation::LessEqual ? 1.0 : -1.0;
      if (b < 0.0) {
        sign_[r] = -1.0;
        b = -b;
        g = -g;
      }
      slack_coef_[r] = g;
      shifted_rhs[r] = b;
      if (g < 0.0) ++num_art_;
    }

    slack_begin_ = n;
    art_begin_ = n + m;
    num_cols_ = n + m + num_art_;
    rhs_col_ = num_cols_;
    phase2_row_ = m;
    phase1_row_ = m + 1;
    T_ = Tableau::Zero(m + 2, num_cols_ + 1);

    int art = art_begin_;
    for (int r = 0; r < m; ++r) {
      for (const auto& [var, coeff] : lp_.constraints[r].coeffs) T_(r, var) += sign_[r] * coeff;
      T_(r, slack_begin_ + r) = slack_coef_[r];
      T_(r, rhs_col_) = shifted_rhs[r];
      if (slack_coef_[r] > 0.0) {
        basis_[r] = slack_begin_ + r;
      } else {
        T_(r, art) = 1.0;
        basis_[r] = art++;
        T_.row(phase1_row_) -= T_.row(r);
      }
    }
    for (int j = art_begin_; j < num_cols_; ++j) T_(phase1_row_, j) = 0.0;
    for (int j = 0; j < n; ++j) T_(phase2_row_, j) = lp_.objective[j];
  }

  // Bland's rule on cost row `cost_row`, entering columns limited to [0, col_limit).
  // Returns false when the objective is unbounded below.
  bool optimize(int cost_row, int col_limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < col_limit; ++j)
        if (T_(cost_row, j) < -opt_.cost_tolerance) {
          enter = j;
          break;
        }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        const double a = T_(r, enter);
        if (a <= opt_.pivot_tolerance) continue;
        const double ratio = T_(r, rhs_col_) / a;
        if (ratio < best_ratio - 1e-12 ||
            (std::abs(ratio - best_ratio) <= 1e-12 && leave >= 0 && basis_[r] < basis_[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      if (++iterations_ > opt_.max_iterations)
        throw SolverError("simplex: iteration cap of " + std::to_string(opt_.max_iterations) + " reached");
    }
  }

  void pivot(int row, int col) {
    T_.row(row) /= T_(row, col);
    for (int r = 0; r < T_.rows(); ++r) {
      if (r == row) continue;
      const double f = T_(r, col);
      if (f == 0.0) continue;
      T_.row(r) -= f * T_.row(row);
      T_(r, col) = 0.0;
    }
    basis_[row] = col;
  }

  void evictArtificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_begin_) continue;
      for (int j = 0; j < art_begin_; ++j)
        if (std::abs(T_(r, j)) > opt_.pivot_tolerance) {
          pivot(r, j);
          break;
        }
      // A row left with its artificial basic is redundant; it stays at zero.
    }
  }

  void extract(LPSolution& sol) {
    const int n = lp_.num_vars;
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n) y[basis_[r]] = T_(r, rhs_col_);
    sol.x.resize(n);
    for (int j = 0; j < n; ++j) sol.x[j] = lp_.var_lower_bounds[j] + std::max(0.0, y[j]);
    sol.objective = lp_.objective_offset;
    for (int j = 0; j < n; ++j) sol.objective += lp_.objective[j] * sol.x[j];
    sol.duals.resize(m_);
    for (int r = 0; r < m_; ++r) {
      const double reduced = T_(phase2_row_, slack_begin_ + r);
      sol.duals[r] = sign_[r] * (-reduced / slack_coef_[r]);
    }
    sol.status = LPStatus::Optimal;
    sol.iterations = iterations_;
  }

  const LPInstance& lp_;
  SimplexOptions opt_;
  Tableau T_;
  std::vector<double> sign_;
  std::vector<double> slack_coef_;
  std::vector<int> basis_;
  int m_ = 0;
  int num_art_ = 0;
  int slack_begin_ = 0;
  int art_begin_ = 0;
  int num_cols_ = 0;
  int rhs_col_ = 0;
  int phase1_row_ = 0;
  int phase2_row_ = 0;
  int iterations_ = 0;
};

}  // namespace

LPSolution solveSimplex(const LPInstance& lp, const SimplexOptions& options) {
  lp.validate();
  return DenseSimplex(lp, options).run();
}

}  // namespace qi
