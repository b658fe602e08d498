// The two semirings used throughout: binary {0,1} with (OR, AND) and the
// extended nonnegative reals with (min, +).
#ifndef QI_ALGEBRA_HPP
#define QI_ALGEBRA_HPP

#include <algorithm>
#include <string>

#include "qi/types.hpp"

namespace qi {

namespace detail {

inline void requireSameShape(Eigen::Index r1, Eigen::Index c1, Eigen::Index r2, Eigen::Index c2,
                             const char* op) {
  if (r1 != r2 || c1 != c2)
    throw DimensionError(std::string(op) + ": shape " + std::to_string(r1) + "x" + std::to_string(c1) +
                         " vs " + std::to_string(r2) + "x" + std::to_string(c2));
}

inline void requireInner(Eigen::Index c1, Eigen::Index r2, const char* op) {
  if (c1 != r2)
    throw DimensionError(std::string(op) + ": inner dimensions " + std::to_string(c1) + " and " +
                         std::to_string(r2) + " differ");
}

}  // namespace detail

// ---- binary algebra -------------------------------------------------------

bool isBinary(const BinaryPattern& X);

/// Throws ParameterError unless every entry is 0 or 1.
void requireBinary(const BinaryPattern& X, const char* what);

/// Entrywise OR.
BinaryPattern binAdd(const BinaryPattern& X, const BinaryPattern& Y);

/// Boolean matrix product: OR over AND.
BinaryPattern binMul(const BinaryPattern& X, const BinaryPattern& Y);

/// X <= Y entrywise.
bool binLeq(const BinaryPattern& X, const BinaryPattern& Y);

/// Number of ones.
long nnz(const BinaryPattern& X);

/// Number of differing cells.
long hammingDistance(const BinaryPattern& X, const BinaryPattern& Y);

BinaryPattern binIdentity(Eigen::Index n);

/// 1 -> 0, 0 -> R. Throws ParameterError for R <= 0.
DelayMatrix sparsityToDelay(const BinaryPattern& X, double R = 1.0);

/// entry < threshold -> 1, otherwise 0 (so +inf -> 0).
BinaryPattern delayToSparsity(const DelayMatrix& D, double threshold = 1.0);

/// Throws ParameterError on negative or NaN entries.
void requireDelay(const DelayMatrix& D, const char* what);

// ---- (min,+) algebra ------------------------------------------------------

/// (A (x) B)_{ij} = min_k A_ik + B_kj. +inf absorbs, and is the additive identity.
template <typename Scalar>
Matrix<Scalar> minplusMul(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  detail::requireInner(A.cols(), B.rows(), "minplusMul");
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Matrix<Scalar> C = Matrix<Scalar>::Constant(A.rows(), B.cols(), inf);
  for (Eigen::Index j = 0; j < B.cols(); ++j)
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      const Scalar b = B(k, j);
      if (b == inf) continue;
      for (Eigen::Index i = 0; i < A.rows(); ++i) C(i, j) = std::min(C(i, j), A(i, k) + b);
    }
  return C;
}

/// Entrywise min.
template <typename Scalar>
Matrix<Scalar> minplusAdd(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  detail::requireSameShape(A.rows(), A.cols(), B.rows(), B.cols(), "minplusAdd");
  return A.cwiseMin(B);
}

}  // namespace qi

#endif  // QI_ALGEBRA_HPP
