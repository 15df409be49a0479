#pragma once

#include <array>
#include <vector>

namespace mbeam {

/// Gauss-Legendre rule on [0, 1]; exact for polynomials of degree <= 2n - 1.
struct GaussRule1D {
  std::vector<double> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return points.size(); }
};

GaussRule1D gauss_legendre(int n);

struct QuadraturePoint {
  std::array<double, 2> xi{};  ///< reference-cell coordinate in [0,1]^dim
  double weight = 0.0;         ///< weight on the unit cell (sums to 1)
};

/// Tensor-product Gauss-Legendre rule on [0,1]^dim with n points per axis.
std::vector<QuadraturePoint> quadrature(int dim, int points_per_axis);

}  // namespace mbeam
