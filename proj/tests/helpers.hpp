#pragma once

#include "entdist/optimkit.hpp"
#include "entdist/states.hpp"

#include <doctest.h>

namespace testing {

using namespace entdist;

inline CVector ket(std::initializer_list<int> bits) {
  int idx = 0;
  for (int b : bits) idx = 2 * idx + b;
  return basis_ket(1 << bits.size(), idx);
}

inline CVector plus() { return CVector::Constant(2, 1.0 / std::sqrt(2.0)); }

inline DensityMatrix phi_plus() { return max_entangled(2).density(); }

// |00>/|++> equal mixture: separable, not classically correlated.
inline DensityMatrix sep_mix() {
  return make_separable({{0.5, {basis_ket(2, 0), basis_ket(2, 0)}}, {0.5, {plus(), plus()}}});
}

inline DensityMatrix werner(double p) {
  return DensityMatrix(p * phi_plus().matrix() + (1 - p) * CMatrix::Identity(4, 4) / 4.0, {2, 2});
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Quick optimizer settings for unit tests; acceptance runs use the defaults.
inline OptimizerConfig quick(int restarts = 4) {
  OptimizerConfig c;
  c.restarts = restarts;
  return c;
}

}  // namespace testing
