#include "qi/oracle.hpp"

#include <bit>
#include <cstdint>
#include <string>

namespace qi::oracle {

namespace {

using Cells = std::vector<Eigen::Index>;  // row-major flat indices

void requireConformant(const BinaryPattern& K, const BinaryPattern& G, const char* op) {
  if (K.rows() != G.cols() || K.cols() != G.rows())
    throw DimensionError(std::string(op) + ": plant pattern must be the transpose shape of the controller");
}

BinaryPattern withCells(const BinaryPattern& base, const Cells& cells, std::uint32_t mask, std::uint8_t value) {
  BinaryPattern Z = base;
  const Eigen::Index cols = base.cols();
  for (std::size_t b = 0; b < cells.size(); ++b)
    if (mask & (1u << b)) Z(cells[b] / cols, cells[b] % cols) = value;
  return Z;
}

bool rowMajorLess(const BinaryPattern& a, const BinaryPattern& b) {
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return a(r, c) < b(r, c);
  return false;
}

}  // namespace

bool satisfiesQI(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K, G, "satisfiesQI");
  for (Eigen::Index k = 0; k < K.rows(); ++k)
    for (Eigen::Index l = 0; l < K.cols(); ++l) {
      if (K(k, l)) continue;
      for (Eigen::Index i = 0; i < K.cols(); ++i)
        for (Eigen::Index j = 0; j < K.rows(); ++j)
          if (K(k, i) && G(i, j) && K(j, l)) return false;
    }
  return true;
}

BinaryPattern exhaustiveMinimalSuperset(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K, G, "exhaustiveMinimalSuperset");
  Cells free;
  for (Eigen::Index r = 0; r < K.rows(); ++r)
    for (Eigen::Index c = 0; c < K.cols(); ++c)
      if (!K(r, c)) free.push_back(r * K.cols() + c);
  if (static_cast<int>(free.size()) > kMaxFreeCells)
    throw ParameterError("exhaustiveMinimalSuperset: " + std::to_string(free.size()) + " free cells exceed the cap of " +
                         std::to_string(kMaxFreeCells));

  const std::uint32_t total = 1u << free.size();
  int best_count = -1;
  std::uint32_t best_mask = 0;
  int ties = 0;
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    const int count = std::popcount(mask);
    if (best_count >= 0 && count > best_count) continue;
    if (!satisfiesQI(withCells(K, free, mask, 1), G)) continue;
    if (best_count < 0 || count < best_count) {
      best_count = count;
      best_mask = mask;
      ties = 1;
    } else {
      ++ties;
    }
  }
  // mask == all ones is the all-ones pattern, which is always QI.
  if (ties != 1) throw Error("exhaustiveMinimalSuperset: minimiser is not unique");
  return withCells(K, free, best_mask, 1);
}

SubsetOptimum exhaustiveMaximalSubset(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K, G, "exhaustiveMaximalSubset");
  Cells ones;
  for (Eigen::Index r = 0; r < K.rows(); ++r)
    for (Eigen::Index c = 0; c < K.cols(); ++c)
      if (K(r, c)) ones.push_back(r * K.cols() + c);
  if (static_cast<int>(ones.size()) > kMaxFreeCells)
    throw ParameterError("exhaustiveMaximalSubset: " + std::to_string(ones.size()) + " ones exceed the cap of " +
                         std::to_string(kMaxFreeCells));

  const std::uint32_t total = 1u << ones.size();
  int best_removed = -1;
  BinaryPattern best;
  for (std::uint32_t mask = 0; mask < total; ++mask) {  // mask = cells switched off
    const int removed = std::popcount(mask);
    if (best_removed >= 0 && removed > best_removed) continue;
    BinaryPattern Z = withCells(K, ones, mask, 0);
    if (!satisfiesQI(Z, G)) continue;
    if (best_removed < 0 || removed < best_removed || rowMajorLess(Z, best)) {
      best_removed = removed;
      best = std::move(Z);
    }
  }
  return {best, best_removed};
}

RationalLP toRational(const LPInstance& lp) {
  lp.validate();
  RationalLP out;
  out.num_vars = lp.num_vars;
  for (double c : lp.objective) out.objective.emplace_back(c);
  out.objective_offset = lp.objective_offset;
  for (double b : lp.var_lower_bounds) out.var_lower_bounds.emplace_back(b);
  for (const auto& row : lp.constraints) {
    RationalConstraint r;
    r.rel = row.rel;
    r.rhs = row.rhs;
    for (const auto& [var, coeff] : row.coeffs) r.coeffs.emplace_back(var, mpq_class(coeff));
    out.constraints.push_back(std::move(r));
  }
  return out;
}

namespace {

class RationalTableau {
 public:
  explicit RationalTableau(const RationalLP& lp) : lp_(lp) {}

  RationalSolution solve() {
    build();
    RationalSolution sol;
    // Phase 1: minimise the sum of artificials.
    if (!iterate(cost1_, width_)) throw Error("solveRationalLP: phase 1 unbounded");
    if (rhsOf(cost1_) != 0) {
      sol.status = LPStatus::Infeasible;
      sol.pivots = pivots_;
      return sol;
    }
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_) continue;
      for (int j = 0; j < art_; ++j)
        if (rows_[r][j] != 0) {
          pivot(r, j);
          break;
        }
    }
    if (!iterate(cost2_, art_)) {
      sol.status = LPStatus::Unbounded;
      sol.pivots = pivots_;
      return sol;
    }
    sol.x.assign(n_, mpq_class(0));
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_) sol.x[basis_[r]] = rows_[r][width_];
    sol.objective = lp_.objective_offset;
    for (int j = 0; j < n_; ++j) {
      sol.x[j] += lp_.var_lower_bounds[j];
      sol.objective += lp_.objective[j] * sol.x[j];
    }
    sol.status = LPStatus::Optimal;
    sol.pivots = pivots_;
    return sol;
  }

 private:
  // Columns: structural [0,n), slacks [n,n+m), artificials [n+m, n+2m), rhs at width_.
  void build() {
    n_ = lp_.num_vars;
    m_ = static_cast<int>(lp_.constraints.size());
    art_ = n_ + m_;
    width_ = n_ + 2 * m_;
    rows_.assign(m_ + 2, std::vector<mpq_class>(width_ + 1, mpq_class(0)));
    cost2_ = m_;
    cost1_ = m_ + 1;
    basis_.assign(m_, 0);
    for (int r = 0; r < m_; ++r) {
      const auto& c = lp_.constraints[r];
      auto& row = rows_[r];
      mpq_class b = c.rhs;
      for (const auto& [var, coeff] : c.coeffs) {
        row[var] += coeff;
        b -= coeff * lp_.var_lower_bounds[var];
      }
      row[n_ + r] = c.rel == Relation::LessEqual ? 1 : -1;
      row[width_] = b;
      if (b < 0)
        for (auto& v : row) v = -v;
      row[art_ + r] = 1;
      basis_[r] = art_ + r;
      for (int j = 0; j <= width_; ++j) rows_[cost1_][j] -= row[j];
    }
    for (int r = 0; r < m_; ++r) rows_[cost1_][art_ + r] = 0;
    for (int j = 0; j < n_; ++j) rows_[cost2_][j] = lp_.objective[j];
  }

  const mpq_class& rhsOf(int row) const { return rows_[row][width_]; }

  bool iterate(int cost, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (rows_[cost][j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      mpq_class best;
      for (int r = 0; r < m_; ++r) {
        if (rows_[r][enter] <= 0) continue;
        mpq_class ratio = rows_[r][width_] / rows_[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(int prow, int col) {
    auto& p = rows_[prow];
    const mpq_class inv = 1 / p[col];
    std::vector<int> nz;
    for (int j = 0; j <= width_; ++j)
      if (p[j] != 0) {
        p[j] *= inv;
        nz.push_back(j);
      }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (static_cast<int>(r) == prow) continue;
      auto& row = rows_[r];
      if (row[col] == 0) continue;
      const mpq_class f = row[col];
      for (int j : nz) row[j] -= f * p[j];
    }
    basis_[prow] = col;
    ++pivots_;
  }

  const RationalLP& lp_;
  std::vector<std::vector<mpq_class>> rows_;
  std::vector<int> basis_;
  int n_ = 0, m_ = 0, art_ = 0, width_ = 0, cost1_ = 0, cost2_ = 0, pivots_ = 0;
};

}  // namespace

RationalSolution solveRationalLP(const RationalLP& lp) {
  return RationalTableau(lp).solve();
}

}  // namespace qi::oracle
