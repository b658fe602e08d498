#include "qi/sparsity_closure.hpp"

#include <string>

#include "qi/algebra.hpp"

namespace qi {

namespace {

void requireConformant(const BinaryPattern& K, const BinaryPattern& G, const char* op) {
  if (K.rows() != G.cols() || K.cols() != G.rows())
    throw DimensionError(std::string(op) + ": plant pattern must be the transpose shape of the controller");
}

// Sums K (GK)^s for s in [0, terms).
BinaryPattern sumOfTerms(const BinaryPattern& K, const BinaryPattern& G, long terms) {
  BinaryPattern sum = BinaryPattern::Zero(K.rows(), K.cols());
  if (terms <= 0) return sum;
  const BinaryPattern GK = binMul(G, K);
  BinaryPattern term = K;
  for (long s = 0; s < terms; ++s) {
    sum = binAdd(sum, term);
    if (s + 1 < terms) {
      BinaryPattern next = binMul(term, GK);
      if (nnz(next) == 0) break;  // every later term is zero too
      term = std::move(next);
    }
  }
  return sum;
}

}  // namespace

int ceilLog2(Eigen::Index n) {
  if (n < 1) throw ParameterError("ceilLog2: n must be positive");
  int m = 0;
  Eigen::Index reach = 1;
  while (reach < n) {
    reach <<= 1;
    ++m;
  }
  return m;
}

ClosureResult closestSuperset(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K, G, "closestSuperset");
  ClosureResult result;
  auto& trace = result.trace;
  BinaryPattern Z = K;
  trace.iterates.push_back(Z);
  for (;;) {
    BinaryPattern next = binAdd(Z, binMul(binMul(Z, G), Z));
    trace.iterates.push_back(next);
    if (next == Z) break;
    Z = std::move(next);
    ++trace.iterations_used;
  }
  for (Eigen::Index k = 0; k < K.rows(); ++k)
    for (Eigen::Index l = 0; l < K.cols(); ++l)
      if (Z(k, l) && !K(k, l)) trace.added_links.emplace_back(k, l);
  result.Zstar = std::move(Z);
  return result;
}

BinaryPattern termExpansion(const BinaryPattern& K, const BinaryPattern& G, int m) {
  requireConformant(K, G, "termExpansion");
  if (m < 0 || m > 20) throw ParameterError("termExpansion: m must lie in [0, 20]");
  return sumOfTerms(K, G, 1L << m);
}

BinaryPattern minimalTermCount(const BinaryPattern& K, const BinaryPattern& G) {
  requireConformant(K, G, "minimalTermCount");
  return sumOfTerms(K, G, std::min(K.rows(), K.cols()));
}

BinaryPattern pathPower(const BinaryPattern& K, const BinaryPattern& G, int r) {
  requireConformant(K, G, "pathPower");
  if (r < 0) throw ParameterError("pathPower: r must be nonnegative");
  const BinaryPattern GK = binMul(G, K);
  BinaryPattern term = K;
  for (int s = 0; s < r; ++s) term = binMul(term, GK);
  return term;
}

}  // namespace qi
