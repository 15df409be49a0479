#include "mbeam/hermite.hpp"

#include <fmt/format.h>

#include "mbeam/error.hpp"

namespace mbeam {

Hermite1D hermite_1d(int q, double x, double h) noexcept {
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double ih = 1.0 / h;
  switch (q) {
    case 0:
      return {1.0 - 3.0 * x2 + 2.0 * x3, (-6.0 * x + 6.0 * x2) * ih, (-6.0 + 12.0 * x) * ih * ih,
              12.0 * ih * ih * ih};
    case 1:
      return {h * (x - 2.0 * x2 + x3), 1.0 - 4.0 * x + 3.0 * x2, (-4.0 + 6.0 * x) * ih,
              6.0 * ih * ih};
    case 2:
      return {3.0 * x2 - 2.0 * x3, (6.0 * x - 6.0 * x2) * ih, (6.0 - 12.0 * x) * ih * ih,
              -12.0 * ih * ih * ih};
    case 3:
      return {h * (-x2 + x3), -2.0 * x + 3.0 * x2, (-2.0 + 6.0 * x) * ih, 6.0 * ih * ih};
    default:
      return {0.0, 0.0, 0.0, 0.0};
  }
}

ShapeValues shape_eval(int dim, std::array<double, 2> h, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != dim || (dim != 1 && dim != 2)) {
    throw Error(ErrorKind::Domain, fmt::format("shape_eval: {} coordinates for dim {}", xi.size(), dim));
  }
  for (double c : xi) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw Error(ErrorKind::Domain, fmt::format("local coordinate {} outside [0,1]", c));
    }
  }
  ShapeValues s;
  if (dim == 1) {
    s.count = 4;
    for (int q = 0; q < 4; ++q) {
      const Hermite1D f = hermite_1d(q, xi[0], h[0]);
      s.value[q] = f.value;
      s.d1[q] = f.d1;
      s.d11[q] = f.d2;
    }
    return s;
  }
  s.count = 16;
  std::array<Hermite1D, 4> fx{}, fy{};
  for (int q = 0; q < 4; ++q) {
    fx[q] = hermite_1d(q, xi[0], h[0]);
    fy[q] = hermite_1d(q, xi[1], h[1]);
  }
  for (int corner = 0; corner < 4; ++corner) {
    const int ex = corner & 1;
    const int ey = corner >> 1;
    for (int kind = 0; kind < 4; ++kind) {
      const int kx = kind & 1;
      const int ky = kind >> 1;
      const Hermite1D& a = fx[2 * ex + kx];
      const Hermite1D& b = fy[2 * ey + ky];
      const int q = 4 * corner + kind;
      s.value[q] = a.value * b.value;
      s.d1[q] = a.d1 * b.value;
      s.d2[q] = a.value * b.d1;
      s.d11[q] = a.d2 * b.value;
      s.d22[q] = a.value * b.d2;
      s.d12[q] = a.d1 * b.d1;
    }
  }
  return s;
}

}  // namespace mbeam
