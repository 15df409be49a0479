#include "mbeam/space.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mbeam/error.hpp"

namespace mbeam {

Mesh Mesh::uniform(const Box& box, int cells_per_axis) {
  if (box.dim != 1 && box.dim != 2) {
    throw Error(ErrorKind::Configuration, fmt::format("mesh dimension {}", box.dim));
  }
  if (cells_per_axis < 1) {
    throw Error(ErrorKind::Configuration, fmt::format("cells per axis = {}", cells_per_axis));
  }
  Mesh m;
  m.dim = box.dim;
  m.box = box;
  m.cells_per_axis = cells_per_axis;
  for (int i = 0; i < box.dim; ++i) {
    if (!(box.axes[i].length() > 0.0)) {
      throw Error(ErrorKind::Configuration, "box interval must have positive length");
    }
    m.h[i] = box.axes[i].length() / cells_per_axis;
  }
  if (box.dim == 1) m.h[1] = 1.0;
  return m;
}

int Mesh::node_count() const noexcept {
  return dim == 1 ? nodes_per_axis() : nodes_per_axis() * nodes_per_axis();
}

int Mesh::cell_count() const noexcept {
  return dim == 1 ? cells_per_axis : cells_per_axis * cells_per_axis;
}

std::array<double, 2> Mesh::node_coord(int node) const noexcept {
  const int n = nodes_per_axis();
  const int i = node % n;
  const int j = node / n;
  std::array<double, 2> y{box.axes[0].lo + i * h[0], 0.0};
  if (dim == 2) y[1] = box.axes[1].lo + j * h[1];
  return y;
}

std::array<double, 2> Mesh::cell_origin(int cell) const noexcept {
  const int i = cell % cells_per_axis;
  const int j = cell / cells_per_axis;
  std::array<double, 2> y{box.axes[0].lo + i * h[0], 0.0};
  if (dim == 2) y[1] = box.axes[1].lo + j * h[1];
  return y;
}

bool Mesh::is_boundary_node(int node) const noexcept {
  const int n = nodes_per_axis();
  const int i = node % n;
  const int j = node / n;
  if (i == 0 || i == n - 1) return true;
  return dim == 2 && (j == 0 || j == n - 1);
}

std::pair<int, std::array<double, 2>> Mesh::locate(std::span<const double> y,
                                                   bool prefer_lower) const {
  if (static_cast<int>(y.size()) != dim || !box.contains(y, 1e-12)) {
    throw Error(ErrorKind::Domain, "point outside the reference box");
  }
  std::array<int, 2> c{0, 0};
  std::array<double, 2> xi{0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    const double s = (y[a] - box.axes[a].lo) / h[a];
    double f = std::floor(s);
    if (prefer_lower && f == s && f > 0.0) f -= 1.0;
    const int ci = std::clamp(static_cast<int>(f), 0, cells_per_axis - 1);
    c[a] = ci;
    xi[a] = std::clamp(s - ci, 0.0, 1.0);
  }
  return {c[0] + cells_per_axis * c[1], xi};
}

HermiteSpace::HermiteSpace(Mesh mesh) : mesh_(std::move(mesh)) {
  dofs_per_node_ = mesh_.dim == 1 ? 2 : 4;
  const int nodes = mesh_.node_count();
  free_index_.assign(static_cast<std::size_t>(nodes * dofs_per_node_), -1);
  int next = 0;
  for (int node = 0; node < nodes; ++node) {
    if (mesh_.is_boundary_node(node)) continue;
    for (int k = 0; k < dofs_per_node_; ++k) free_index_[node * dofs_per_node_ + k] = next++;
  }
  free_count_ = next;

  for (int cell = 0; cell < mesh_.cell_count(); ++cell) {
    const auto dofs = cell_dofs(cell);
    int lo = free_count_;
    int hi = -1;
    for (int q = 0; q < local_count(); ++q) {
      if (dofs[q] < 0) continue;
      lo = std::min(lo, dofs[q]);
      hi = std::max(hi, dofs[q]);
    }
    if (hi >= lo) bandwidth_ = std::max(bandwidth_, hi - lo);
  }
}

int HermiteSpace::global_dof(int cell, int q) const noexcept {
  const int n = mesh_.nodes_per_axis();
  if (mesh_.dim == 1) {
    const int end = q / 2;
    const int kind = q % 2;
    return (cell + end) * 2 + kind;
  }
  const int cx = cell % mesh_.cells_per_axis;
  const int cy = cell / mesh_.cells_per_axis;
  const int corner = q / 4;
  const int kind = q % 4;
  const int node = (cx + (corner & 1)) + n * (cy + (corner >> 1));
  return node * 4 + kind;
}

std::array<int, kMaxLocalDofs> HermiteSpace::cell_dofs(int cell) const noexcept {
  std::array<int, kMaxLocalDofs> out;
  out.fill(-1);
  for (int q = 0; q < local_count(); ++q) out[q] = free_index_[global_dof(cell, q)];
  return out;
}

std::vector<ShapeValues> HermiteSpace::tabulate(const std::vector<QuadraturePoint>& rule) const {
  std::vector<ShapeValues> out;
  out.reserve(rule.size());
  for (const auto& qp : rule) {
    out.push_back(shape_eval(mesh_.dim, mesh_.h,
                             std::span<const double>(qp.xi.data(), static_cast<std::size_t>(mesh_.dim))));
  }
  return out;
}

std::array<double, 2> HermiteSpace::to_physical(int cell, const std::array<double, 2>& xi) const noexcept {
  auto y = mesh_.cell_origin(cell);
  y[0] += xi[0] * mesh_.h[0];
  if (mesh_.dim == 2) y[1] += xi[1] * mesh_.h[1];
  return y;
}

FieldValue HermiteSpace::evaluate_shapes(const Vector& d, int cell,
                                         const ShapeValues& s) const noexcept {
  FieldValue f;
  const auto dofs = cell_dofs(cell);
  for (int q = 0; q < s.count; ++q) {
    if (dofs[q] < 0) continue;
    const double c = d[dofs[q]];
    f.value += c * s.value[q];
    f.grad[0] += c * s.d1[q];
    f.grad[1] += c * s.d2[q];
    f.d11 += c * s.d11[q];
    f.d22 += c * s.d22[q];
    f.d12 += c * s.d12[q];
  }
  return f;
}

FieldValue HermiteSpace::evaluate_in_cell(const Vector& d, int cell,
                                          std::span<const double> xi) const {
  return evaluate_shapes(d, cell, shape_eval(mesh_.dim, mesh_.h, xi));
}

FieldValue HermiteSpace::evaluate(const Vector& d, std::span<const double> y) const {
  const auto [cell, xi] = mesh_.locate(y);
  return evaluate_in_cell(d, cell, std::span<const double>(xi.data(), static_cast<std::size_t>(mesh_.dim)));
}

Vector HermiteSpace::interpolate(const HermiteDatum& datum) const {
  const std::array<const std::function<double(std::span<const double>)>*, 4> by_kind{
      &datum.value, &datum.d1, mesh_.dim == 1 ? nullptr : &datum.d2,
      mesh_.dim == 1 ? nullptr : &datum.d12};
  static constexpr std::array<const char*, 4> names{"value", "d/dy1", "d/dy2", "d2/dy1dy2"};
  for (int k = 0; k < dofs_per_node_; ++k) {
    if (by_kind[k] == nullptr || !*by_kind[k]) {
      throw Error(ErrorKind::Configuration,
                  fmt::format("interpolation needs the {} callback", names[k]));
    }
  }
  Vector d = Vector::Zero(free_count_);
  for (int node = 0; node < mesh_.node_count(); ++node) {
    if (mesh_.is_boundary_node(node)) continue;
    const auto y = mesh_.node_coord(node);
    const std::span<const double> ys(y.data(), static_cast<std::size_t>(mesh_.dim));
    for (int k = 0; k < dofs_per_node_; ++k) {
      d[free_index_[node * dofs_per_node_ + k]] = (*by_kind[k])(ys);
    }
  }
  return d;
}

HermiteSpace::NodalValues HermiteSpace::nodal_values(const Vector& d) const {
  NodalValues out;
  for (int node = 0; node < mesh_.node_count(); ++node) {
    out.coords.push_back(mesh_.node_coord(node));
    const int idx = free_index_[node * dofs_per_node_];
    out.values.push_back(idx < 0 ? 0.0 : d[idx]);
  }
  return out;
}

}  // namespace mbeam
