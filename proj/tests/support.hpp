// Seeded generators shared by the test binaries.
#ifndef QI_TESTS_SUPPORT_HPP
#define QI_TESTS_SUPPORT_HPP

#include <random>

#include "qi/types.hpp"

namespace qi::testing {

using Rng = std::mt19937_64;

inline BinaryPattern randomPattern(Rng& rng, Eigen::Index rows, Eigen::Index cols, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BinaryPattern X(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) X(r, c) = bit(rng) ? 1 : 0;
  return X;
}

/// Integer delays in [0, hi].
inline DelayMatrix randomDelays(Rng& rng, Eigen::Index rows, Eigen::Index cols, int hi = 9) {
  std::uniform_int_distribution<int> d(0, hi);
  DelayMatrix D(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) D(r, c) = d(rng);
  return D;
}

/// Pattern number `code` among all 2^(rows*cols), row-major bits.
inline BinaryPattern patternFromCode(unsigned code, Eigen::Index rows, Eigen::Index cols) {
  BinaryPattern X(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) X(r, c) = (code >> (r * cols + c)) & 1u;
  return X;
}

inline BinaryPattern pattern2(int a, int b, int c, int d) {
  BinaryPattern X(2, 2);
  X << a, b, c, d;
  return X;
}

}  // namespace qi::testing

#endif  // QI_TESTS_SUPPORT_HPP
