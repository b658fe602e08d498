#include "qi/qi_test.hpp"

#include <string>

#include "qi/algebra.hpp"

namespace qi {

namespace {

void requireConformant(Eigen::Index ctrl_rows, Eigen::Index ctrl_cols, Eigen::Index plant_rows,
                       Eigen::Index plant_cols, const char* op) {
  if (ctrl_rows != plant_cols || ctrl_cols != plant_rows)
    throw DimensionError(std::string(op) + ": controller is " + std::to_string(ctrl_rows) + "x" +
                         std::to_string(ctrl_cols) + " but plant is " + std::to_string(plant_rows) + "x" +
                         std::to_string(plant_cols) + " (expected " + std::to_string(ctrl_cols) + "x" +
                         std::to_string(ctrl_rows) + ")");
}

}  // namespace

QIReport isQISparsity(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K.rows(), K.cols(), G.rows(), G.cols(), "isQISparsity");
  const Eigen::Index nu = K.rows(), ny = K.cols();
  QIReport report;
  report.kind = ConstraintKind::Sparsity;
  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l) {
      if (K(k, l)) continue;
      for (Eigen::Index i = 0; i < ny; ++i) {
        if (!K(k, i)) continue;
        for (Eigen::Index j = 0; j < nu; ++j)
          if (G(i, j) && K(j, l)) report.violations.push_back({k, i, j, l, std::nullopt});
      }
    }
  report.is_qi = report.violations.empty();
  return report;
}

bool isQISparsityFast(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K.rows(), K.cols(), G.rows(), G.cols(), "isQISparsityFast");
  return binAdd(K, binMul(binMul(K, G), K)) == K;
}

QIReport isQIDelay(const DelayMatrix& t, const DelayMatrix& p, double slack_tolerance) {
  requireConformant(t.rows(), t.cols(), p.rows(), p.cols(), "isQIDelay");
  if (!(slack_tolerance >= 0.0)) throw ParameterError("isQIDelay: slack tolerance must be nonnegative");
  const Eigen::Index nu = t.rows(), ny = t.cols();
  QIReport report;
  report.kind = ConstraintKind::Delay;
  for (Eigen::Index k = 0; k < nu; ++k)
    for (Eigen::Index l = 0; l < ny; ++l) {
      const double target = t(k, l);
      for (Eigen::Index i = 0; i < ny; ++i)
        for (Eigen::Index j = 0; j < nu; ++j) {
          const double path = t(k, i) + p(i, j) + t(j, l);
          if (path >= target) continue;
          const double slack = target - path;
          if (slack > slack_tolerance) report.violations.push_back({k, i, j, l, slack});
        }
    }
  report.is_qi = report.violations.empty();
  return report;
}

TriangleResult triangleHolds(const DelayMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionError("triangleHolds: transmission delays must be square");
  const Eigen::Index n = t.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index m = 0; m < n; ++m)
      for (Eigen::Index l = 0; l < n; ++l)
        if (t(k, l) > t(k, m) + t(m, l)) return {false, std::array<Eigen::Index, 3>{k, m, l}};
  return {};
}

QIReport isQIDelayReduced(const DelayMatrix& t, const DelayMatrix& p, double slack_tolerance) {
  if (t.rows() != t.cols() || p.rows() != p.cols() || t.rows() != p.rows())
    throw DimensionError("isQIDelayReduced: needs square t and p of equal size");
  for (Eigen::Index k = 0; k < t.rows(); ++k)
    if (t(k, k) != 0.0)
      throw ParameterError("isQIDelayReduced: transmission delay (" + std::to_string(k + 1) + "," +
                           std::to_string(k + 1) + ") is nonzero");
  const TriangleResult tri = triangleHolds(t);
  if (!tri.holds) {
    const auto& w = *tri.witness;
    throw ParameterError("isQIDelayReduced: triangle inequality fails at (" + std::to_string(w[0] + 1) + "," +
                         std::to_string(w[1] + 1) + "," + std::to_string(w[2] + 1) + ")");
  }
  QIReport report;
  report.kind = ConstraintKind::Delay;
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      if (p(i, j) >= t(i, j)) continue;
      const double slack = t(i, j) - p(i, j);
      if (slack > slack_tolerance) report.violations.push_back({i, i, j, j, slack});
    }
  report.is_qi = report.violations.empty();
  return report;
}

}  // namespace qi
