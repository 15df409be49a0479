#pragma once

/**
 * @file hermite.hpp
 * @brief C1 Hermite shape functions: cubic in 1D, Bogner-Fox-Schmit bicubic
 *        (tensor products of the 1D cubics) in 2D.
 *
 * Local numbering. 1D: q = 2 * end + kind, end in {0,1} (left, right node),
 * kind 0 = value, 1 = d/dy. 2D: q = 4 * corner + kind with
 * corner = ex + 2 ey and kind 0 = value, 1 = d/dy1, 2 = d/dy2, 3 = d2/dy1dy2.
 * Derivative shapes carry the cell size so every DOF is the physical
 * derivative of the represented function at its node.
 */

#include <array>
#include <span>

namespace mbeam {

inline constexpr int kMaxLocalDofs = 16;

/// Values and physical derivatives (up to second order) of every local shape
/// function at one point of a cell. Unused entries are zero.
struct ShapeValues {
  int count = 0;
  std::array<double, kMaxLocalDofs> value{};
  std::array<double, kMaxLocalDofs> d1{};
  std::array<double, kMaxLocalDofs> d2{};
  std::array<double, kMaxLocalDofs> d11{};
  std::array<double, kMaxLocalDofs> d22{};
  std::array<double, kMaxLocalDofs> d12{};

  double laplacian(int q) const noexcept { return d11[q] + d22[q]; }
  double grad(int q, int axis) const noexcept { return axis == 0 ? d1[q] : d2[q]; }
};

/// 1D cubic Hermite shape `q` (0..3) and its first three derivatives with
/// respect to y on a cell of length h, at reference coordinate xi in [0,1].
struct Hermite1D {
  double value, d1, d2, d3;
};
Hermite1D hermite_1d(int q, double xi, double h) noexcept;

/// Throws Domain when a coordinate lies outside [0,1].
ShapeValues shape_eval(int dim, std::array<double, 2> cell_size, std::span<const double> xi);

}  // namespace mbeam
