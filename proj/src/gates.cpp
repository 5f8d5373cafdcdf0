#include "butterfly/gates.hpp"

#include <algorithm>

namespace butterfly {

double unitarity_defect(const Gate2& g) {
  // U^dag U entries
  cdouble udu[4];
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      udu[2 * r + c] = std::conj(g(0, r)) * g(0, c) + std::conj(g(1, r)) * g(1, c);
  udu[0] -= 1.0;
  udu[3] -= 1.0;
  double d = 0.0;
  for (const cdouble& v : udu) d = std::max(d, std::abs(v));
  return d;
}

void check_unitary(const Gate2& g) {
  const double d = unitarity_defect(g);
  if (d > 1e-10)
    throw ValidationError("gate is not unitary (defect " + std::to_string(d) + ")");
}

}  // namespace butterfly
