#include <cmath>

#include "qi/algebra.hpp"

namespace qi {

bool isBinary(const BinaryPattern& X) {
  return (X.array() <= 1).all();
}

void requireBinary(const BinaryPattern& X, const char* what) {
  if (X.size() == 0) throw ParameterError(std::string(what) + ": empty pattern");
  if (!isBinary(X)) throw ParameterError(std::string(what) + ": entries must be 0 or 1");
}

BinaryPattern binAdd(const BinaryPattern& X, const BinaryPattern& Y) {
  detail::requireSameShape(X.rows(), X.cols(), Y.rows(), Y.cols(), "binAdd");
  return X.cwiseMax(Y);
}

BinaryPattern binMul(const BinaryPattern& X, const BinaryPattern& Y) {
  detail::requireInner(X.cols(), Y.rows(), "binMul");
  BinaryPattern Z = BinaryPattern::Zero(X.rows(), Y.cols());
  for (Eigen::Index j = 0; j < Y.cols(); ++j)
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
      if (!Y(k, j)) continue;
      for (Eigen::Index i = 0; i < X.rows(); ++i)
        if (X(i, k)) Z(i, j) = 1;
    }
  return Z;
}

bool binLeq(const BinaryPattern& X, const BinaryPattern& Y) {
  detail::requireSameShape(X.rows(), X.cols(), Y.rows(), Y.cols(), "binLeq");
  return (X.array() <= Y.array()).all();
}

long nnz(const BinaryPattern& X) {
  return static_cast<long>((X.array() != 0).count());
}

long hammingDistance(const BinaryPattern& X, const BinaryPattern& Y) {
  detail::requireSameShape(X.rows(), X.cols(), Y.rows(), Y.cols(), "hammingDistance");
  return static_cast<long>((X.array() != Y.array()).count());
}

BinaryPattern binIdentity(Eigen::Index n) {
  return BinaryPattern::Identity(n, n);
}

DelayMatrix sparsityToDelay(const BinaryPattern& X, double R) {
  if (!(R > 0.0) || std::isinf(R)) throw ParameterError("sparsityToDelay: R must be a positive finite real");
  return X.unaryExpr([R](std::uint8_t x) { return x ? 0.0 : R; });
}

BinaryPattern delayToSparsity(const DelayMatrix& D, double threshold) {
  if (!(threshold > 0.0)) throw ParameterError("delayToSparsity: threshold must be positive");
  return D.unaryExpr([threshold](double d) { return static_cast<std::uint8_t>(d < threshold ? 1 : 0); });
}

void requireDelay(const DelayMatrix& D, const char* what) {
  if (D.size() == 0) throw ParameterError(std::string(what) + ": empty delay matrix");
  for (Eigen::Index i = 0; i < D.rows(); ++i)
    for (Eigen::Index j = 0; j < D.cols(); ++j)
      if (std::isnan(D(i, j)) || D(i, j) < 0.0)
        throw ParameterError(std::string(what) + ": entries must be nonnegative (" + std::to_string(i + 1) +
                             "," + std::to_string(j + 1) + ")");
}

}  // namespace qi
