#pragma once

#include <array>
#include <cmath>

#include "butterfly/common.hpp"

namespace butterfly {

// 2x2 single-qubit unitary, row-major: {m00, m01, m10, m11}.
struct Gate2 {
  std::array<cdouble, 4> m;

  cdouble operator()(int r, int c) const { return m[2 * r + c]; }
};

// max |(U^dag U - I)_ij|
double unitarity_defect(const Gate2& g);

// Throws ValidationError if g is not unitary within 1e-10.
void check_unitary(const Gate2& g);

namespace gates {

inline Gate2 identity() { return {{cdouble(1), 0, 0, cdouble(1)}}; }
inline Gate2 x() { return {{0, cdouble(1), cdouble(1), 0}}; }
inline Gate2 z() { return {{cdouble(1), 0, 0, cdouble(-1)}}; }

// Rotation convention R_a(theta) = exp(-i theta sigma_a / 2).
inline Gate2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {{cdouble(c), cdouble(0, -s), cdouble(0, -s), cdouble(c)}};
}
inline Gate2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {{cdouble(c), cdouble(-s), cdouble(s), cdouble(c)}};
}
inline Gate2 rz(double theta) {
  return {{std::exp(cdouble(0, -theta / 2)), 0, 0, std::exp(cdouble(0, theta / 2))}};
}

// L_V = (I + s i X)/sqrt(2); equals rx(-s*pi/2). s = +1 or -1.
inline Gate2 lv_x(int sign) {
  const double r = 1.0 / std::sqrt(2.0);
  return {{cdouble(r), cdouble(0, sign * r), cdouble(0, sign * r), cdouble(r)}};
}

inline Gate2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{cdouble(r), cdouble(r), cdouble(r), cdouble(-r)}};
}

// Basis change for measuring sigma_y: H * S^dag (maps the sigma_y eigenbasis
// onto the computational basis).
inline Gate2 y_basis_change() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{cdouble(r), cdouble(0, -r), cdouble(r), cdouble(0, r)}};
}

}  // namespace gates
}  // namespace butterfly
