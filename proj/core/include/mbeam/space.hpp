#pragma once

/**
 * @file space.hpp
 * @brief Uniform mesh of the reference box and the clamped C1 Hermite space
 *        built on it.
 */

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "mbeam/geometry.hpp"
#include "mbeam/hermite.hpp"
#include "mbeam/quadrature.hpp"
#include "mbeam/types.hpp"

namespace mbeam {

struct Mesh {
  int dim = 1;
  Box box{};
  int cells_per_axis = 1;
  std::array<double, 2> h{1.0, 1.0};

  /// h = box length / cells per axis, per axis.
  static Mesh uniform(const Box& box, int cells_per_axis);

  int nodes_per_axis() const noexcept { return cells_per_axis + 1; }
  int node_count() const noexcept;
  int cell_count() const noexcept;

  std::array<double, 2> node_coord(int node) const noexcept;
  std::array<double, 2> cell_origin(int cell) const noexcept;
  bool is_boundary_node(int node) const noexcept;

  /// Maps a reference-box point to the owning cell and local coordinate.
  /// Points on an interior facet are assigned to the cell on their right/top
  /// unless `prefer_lower` is set.
  std::pair<int, std::array<double, 2>> locate(std::span<const double> y,
                                               bool prefer_lower = false) const;
};

/// Value and derivatives of a discrete field at one point.
struct FieldValue {
  double value = 0.0;
  std::array<double, 2> grad{};
  double d11 = 0.0;
  double d22 = 0.0;
  double d12 = 0.0;

  double laplacian() const noexcept { return d11 + d22; }
};

/**
 * Hermite DOF data for interpolation. A callback may be left empty when the
 * corresponding DOF kind does not occur (d2 and d12 in 1D).
 */
struct HermiteDatum {
  std::function<double(std::span<const double>)> value;
  std::function<double(std::span<const double>)> d1;
  std::function<double(std::span<const double>)> d2;
  std::function<double(std::span<const double>)> d12;
};

class HermiteSpace {
 public:
  explicit HermiteSpace(Mesh mesh);

  const Mesh& mesh() const noexcept { return mesh_; }
  int dim() const noexcept { return mesh_.dim; }
  int dofs_per_node() const noexcept { return dofs_per_node_; }
  int local_count() const noexcept { return mesh_.dim == 1 ? 4 : 16; }
  int global_count() const noexcept { return static_cast<int>(free_index_.size()); }
  int free_count() const noexcept { return free_count_; }

  /// Solution-vector index of a global DOF, -1 when it is clamped to zero.
  /// Every DOF of a boundary node is clamped (value, first derivatives, and
  /// in 2D the mixed derivative).
  int free_index(int global_dof) const noexcept { return free_index_[global_dof]; }

  /// Global DOF of local shape `q` in `cell`.
  int global_dof(int cell, int q) const noexcept;

  /// Free indices of the local shapes of `cell` (-1 for clamped DOFs).
  std::array<int, kMaxLocalDofs> cell_dofs(int cell) const noexcept;

  /// Largest |i - j| over free DOF pairs sharing a cell.
  int bandwidth() const noexcept { return bandwidth_; }

  /// Shape values at every point of a reference-cell rule (identical for
  /// every cell of the uniform mesh).
  std::vector<ShapeValues> tabulate(const std::vector<QuadraturePoint>& rule) const;

  /// Physical coordinate of a reference-cell point inside `cell`.
  std::array<double, 2> to_physical(int cell, const std::array<double, 2>& xi) const noexcept;

  /// Evaluates the field with free coefficients `d` at a reference-box point.
  FieldValue evaluate(const Vector& d, std::span<const double> y) const;
  /// Same, restricted to one cell at a local coordinate.
  FieldValue evaluate_in_cell(const Vector& d, int cell, std::span<const double> xi) const;
  FieldValue evaluate_shapes(const Vector& d, int cell, const ShapeValues& shapes) const noexcept;

  /// Nodal Hermite interpolation: every free DOF takes the value or
  /// derivative of the datum at its node. Throws Configuration when a needed
  /// callback is missing.
  Vector interpolate(const HermiteDatum& datum) const;

  /// Free coefficients of the value DOFs together with their node coordinates.
  struct NodalValues {
    std::vector<std::array<double, 2>> coords;
    std::vector<double> values;
  };
  NodalValues nodal_values(const Vector& d) const;

 private:
  Mesh mesh_;
  int dofs_per_node_ = 2;
  int free_count_ = 0;
  int bandwidth_ = 0;
  std::vector<int> free_index_;
};

}  // namespace mbeam
