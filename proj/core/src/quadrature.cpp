#include "mbeam/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mbeam/error.hpp"

namespace mbeam {

GaussRule1D gauss_legendre(int n) {
  if (n < 1 || n > 64) {
    throw Error(ErrorKind::Configuration, fmt::format("Gauss rule with {} points", n));
  }
  const auto un = static_cast<unsigned>(n);
  GaussRule1D rule;
  rule.points.resize(un);
  rule.weights.resize(un);
  // Roots are symmetric; Newton on P_n from the Chebyshev-like initial guess.
  for (unsigned i = 0; i < (un + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(un, x);
      const double pm = std::legendre(un - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      const double p = std::legendre(un, x);
      const double pm = std::legendre(un - 1, x);
      dp = n * (x * p - pm) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1,1] -> [0,1]; ascending order
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[un - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[un - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.points[un / 2] = 0.5;
  return rule;
}

std::vector<QuadraturePoint> quadrature(int dim, int points_per_axis) {
  const GaussRule1D r = gauss_legendre(points_per_axis);
  std::vector<QuadraturePoint> out;
  if (dim == 1) {
    for (std::size_t i = 0; i < r.size(); ++i) out.push_back({{r.points[i], 0.0}, r.weights[i]});
  } else if (dim == 2) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        out.push_back({{r.points[i], r.points[j]}, r.weights[i] * r.weights[j]});
      }
    }
  } else {
    throw Error(ErrorKind::Configuration, fmt::format("quadrature in dimension {}", dim));
  }
  return out;
}

}  // namespace mbeam
