// The two worked four-subsystem systems used by `qi reproduce` and the tests.
#ifndef QI_REFERENCE_DATA_HPP
#define QI_REFERENCE_DATA_HPP

#include "qi/types.hpp"

namespace qi::reference {

/// Inputs 1 and 2 also drive the next subsystem; input 4 also drives subsystem 3.
inline BinaryPattern plantI() {
  BinaryPattern G(4, 4);
  G << 1, 0, 0, 0,
       1, 1, 0, 0,
       0, 1, 1, 1,
       0, 0, 0, 1;
  return G;
}

/// Open daisy chain.
inline BinaryPattern plantII() {
  BinaryPattern G(4, 4);
  G << 1, 0, 0, 0,
       1, 1, 0, 0,
       0, 1, 1, 0,
       0, 0, 1, 1;
  return G;
}

inline BinaryPattern supersetI() {
  BinaryPattern Z(4, 4);
  Z << 1, 0, 0, 0,
       1, 1, 0, 0,
       1, 1, 1, 1,
       0, 0, 0, 1;
  return Z;
}

inline BinaryPattern supersetII() {
  BinaryPattern Z(4, 4);
  Z << 1, 0, 0, 0,
       1, 1, 0, 0,
       1, 1, 1, 0,
       1, 1, 1, 1;
  return Z;
}

inline DelayMatrix propagationDelays() {
  DelayMatrix p(4, 4);
  p << 9, 0, 8, 4,
       0, 7, 8, 7,
       3, 5, 7, 1,
       5, 5, 3, 1;
  return p;
}

inline DelayMatrix transmissionDelays() {
  DelayMatrix t(4, 4);
  t << 2, 3, 6, 5,
       5, 2, 2, 9,
       9, 8, 0, 0,
       7, 9, 8, 5;
  return t;
}

/// t_out - t~ of the closest superset (any norm).
inline DelayMatrix supersetDelta() {
  DelayMatrix d = DelayMatrix::Zero(4, 4);
  d(0, 2) = -2;
  d(1, 0) = -1;
  d(1, 3) = -2;
  d(2, 0) = -4;
  d(2, 1) = -2;
  return d;
}

}  // namespace qi::reference

#endif  // QI_REFERENCE_DATA_HPP
