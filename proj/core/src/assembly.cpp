#include "mbeam/assembly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>
#include <fmt/format.h>

#include "mbeam/error.hpp"

namespace mbeam {

namespace {

std::span<const double> point_span(const std::array<double, 2>& y, int dim) {
  return {y.data(), static_cast<std::size_t>(dim)};
}

double cell_measure(const Mesh& mesh) { return mesh.dim == 1 ? mesh.h[0] : mesh.h[0] * mesh.h[1]; }

}  // namespace

Assembler::Assembler(const HermiteSpace& space, AssemblyOptions options)
    : space_(&space), options_(options), local_(space.local_count()) {
  const int n = space.free_count();
  const int cells = space.mesh().cell_count();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(cells) * local_ * local_);
  for (int cell = 0; cell < cells; ++cell) {
    const auto dofs = space.cell_dofs(cell);
    for (int p = 0; p < local_; ++p) {
      if (dofs[p] < 0) continue;
      for (int q = 0; q < local_; ++q) {
        if (dofs[q] >= 0) triplets.emplace_back(dofs[p], dofs[q], 0.0);
      }
    }
  }
  pattern_.resize(n, n);
  pattern_.setFromTriplets(triplets.begin(), triplets.end());
  pattern_.makeCompressed();

  scatter_.assign(static_cast<std::size_t>(cells) * local_ * local_, -1);
  const auto* outer = pattern_.outerIndexPtr();
  const auto* inner = pattern_.innerIndexPtr();
  for (int cell = 0; cell < cells; ++cell) {
    const auto dofs = space.cell_dofs(cell);
    for (int p = 0; p < local_; ++p) {
      if (dofs[p] < 0) continue;
      for (int q = 0; q < local_; ++q) {
        if (dofs[q] < 0) continue;
        const int col = dofs[q];
        const auto* first = inner + outer[col];
        const auto* last = inner + outer[col + 1];
        const auto* it = std::lower_bound(first, last, dofs[p]);
        scatter_[(static_cast<std::size_t>(cell) * local_ + p) * local_ + q] =
            static_cast<int>(it - inner);
      }
    }
  }
}

void Assembler::scatter(SparseMatrix& m, int cell, const double* local) const {
  double* values = m.valuePtr();
  const int* map = scatter_.data() + static_cast<std::size_t>(cell) * local_ * local_;
  for (int k = 0; k < local_ * local_; ++k) {
    if (map[k] >= 0) values[map[k]] += local[k];
  }
}

Assembler::ElementMatrices Assembler::constant_element_matrices() const {
  const Mesh& mesh = space_->mesh();
  const auto rule = quadrature(mesh.dim, options_.operator_points);
  const auto shapes = space_->tabulate(rule);
  const double measure = cell_measure(mesh);
  ElementMatrices e{DenseMatrix::Zero(local_, local_), DenseMatrix::Zero(local_, local_),
                    DenseMatrix::Zero(local_, local_)};
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const ShapeValues& s = shapes[k];
    const double w = rule[k].weight * measure;
    for (int p = 0; p < local_; ++p) {
      for (int q = 0; q < local_; ++q) {
        e.mass(p, q) += w * s.value[p] * s.value[q];
        e.stiffness_grad(p, q) += w * (s.d1[p] * s.d1[q] + s.d2[p] * s.d2[q]);
        e.stiffness_bilap(p, q) += w * s.laplacian(p) * s.laplacian(q);
      }
    }
  }
  return e;
}

AssembledOperators Assembler::assemble_constant() const {
  const ElementMatrices e = constant_element_matrices();
  // Row-major copies so the local index p * local + q matches the scatter map.
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const RowMajor m = e.mass;
  const RowMajor k1 = e.stiffness_grad;
  const RowMajor k2 = e.stiffness_bilap;
  AssembledOperators ops{pattern_, pattern_, pattern_, space_->bandwidth()};
  for (int cell = 0; cell < space_->mesh().cell_count(); ++cell) {
    scatter(ops.mass, cell, m.data());
    scatter(ops.stiffness_grad, cell, k1.data());
    scatter(ops.stiffness_bilap, cell, k2.data());
  }
  return ops;
}

TimeDependentOperators Assembler::assemble_time_dependent(const MovingBoundary& boundary,
                                                          const BeamParameters& params,
                                                          double t) const {
  const Mesh& mesh = space_->mesh();
  const int dim = mesh.dim;
  const BoundaryState state = boundary.eval(t);
  const auto rule = quadrature(dim, options_.operator_points);
  const auto shapes = space_->tabulate(rule);
  const double measure = cell_measure(mesh);

  TimeDependentOperators ops{pattern_, pattern_, pattern_, pattern_};
  const auto nl = static_cast<std::size_t>(local_ * local_);
  std::vector<double> tension(nl), cross(nl), conv4(nl), conv5(nl);
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    std::fill(tension.begin(), tension.end(), 0.0);
    std::fill(cross.begin(), cross.end(), 0.0);
    std::fill(conv4.begin(), conv4.end(), 0.0);
    std::fill(conv5.begin(), conv5.end(), 0.0);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto y = space_->to_physical(cell, rule[k].xi);
      const CoefficientSet c = eval_coefficients(state, params, point_span(y, dim));
      const ShapeValues& s = shapes[k];
      const double w = rule[k].weight * measure;
      for (int p = 0; p < local_; ++p) {
        for (int q = 0; q < local_; ++q) {
          double tv = 0.0, xv = 0.0, c4 = 0.0, c5 = 0.0;
          for (int i = 0; i < dim; ++i) {
            const double gq = s.grad(q, i);
            tv += c.a1[i] * gq * s.grad(p, i);
            c4 += c.a4[i] * gq;
            c5 += c.a5[i] * gq;
            for (int j = 0; j < dim; ++j) xv += c.a2[i][j] * gq * s.grad(p, j);
          }
          const auto idx = static_cast<std::size_t>(p * local_ + q);
          tension[idx] += w * tv;
          cross[idx] += w * xv;
          conv4[idx] += w * c4 * s.value[p];
          conv5[idx] += w * c5 * s.value[p];
        }
      }
    }
    scatter(ops.tension, cell, tension.data());
    scatter(ops.cross, cell, cross.data());
    scatter(ops.velocity_convection, cell, conv4.data());
    scatter(ops.displacement_convection, cell, conv5.data());
  }
  return ops;
}

EvolutionOperators Assembler::assemble_evolution(const AssembledOperators& constant,
                                                 const MovingBoundary& boundary,
                                                 const BeamParameters& params, double t) const {
  const BoundaryState state = boundary.eval(t);
  const TimeDependentOperators td = assemble_time_dependent(boundary, params, t);
  EvolutionOperators ev;
  ev.t = t;
  const double origin[2] = {0.0, 0.0};
  const CoefficientSet c = eval_coefficients(state, params, std::span<const double>(origin, 1));
  ev.b1 = c.b1;
  ev.b2 = c.b2;
  ev.damping = params.nu * constant.mass + td.velocity_convection;
  ev.stiffness = c.b2 * constant.stiffness_bilap + td.tension + td.displacement_convection - td.cross;
  return ev;
}

Vector Assembler::assemble_load(const SourceFunction& f, double t) const {
  const Mesh& mesh = space_->mesh();
  const int dim = mesh.dim;
  const auto rule = quadrature(dim, options_.load_points);
  const auto shapes = space_->tabulate(rule);
  const double measure = cell_measure(mesh);
  Vector F = Vector::Zero(space_->free_count());
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    const auto dofs = space_->cell_dofs(cell);
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto y = space_->to_physical(cell, rule[k].xi);
      const double fv = f(point_span(y, dim), t);
      if (!std::isfinite(fv)) {
        throw Error(ErrorKind::SourceEvaluation,
                    dim == 1 ? fmt::format("f({}, {}) = {}", y[0], t, fv)
                             : fmt::format("f(({}, {}), {}) = {}", y[0], y[1], t, fv));
      }
      const double w = rule[k].weight * measure * fv;
      for (int p = 0; p < local_; ++p) {
        if (dofs[p] >= 0) F[dofs[p]] += w * shapes[k].value[p];
      }
    }
  }
  return F;
}

AssembledOperators assemble_constant(const HermiteSpace& space, const AssemblyOptions& options) {
  return Assembler(space, options).assemble_constant();
}

TimeDependentOperators assemble_time_dependent(const HermiteSpace& space,
                                               const MovingBoundary& boundary,
                                               const BeamParameters& params, double t,
                                               const AssemblyOptions& options) {
  return Assembler(space, options).assemble_time_dependent(boundary, params, t);
}

Vector assemble_load(const HermiteSpace& space, const SourceFunction& f, double t,
                     const AssemblyOptions& options) {
  return Assembler(space, options).assemble_load(f, t);
}

InitialCoefficients interpolate_initial(const Assembler& assembler, const HermiteDatum& v0,
                                        const HermiteDatum& v1, InitialDataMode mode) {
  const HermiteSpace& space = assembler.space();
  if (mode == InitialDataMode::NodalInterpolation) {
    return {space.interpolate(v0), space.interpolate(v1)};
  }
  if (!v0.value || !v1.value) {
    throw Error(ErrorKind::Configuration, "L2 projection needs value callbacks");
  }
  const AssembledOperators ops = assembler.assemble_constant();
  Eigen::SimplicialLDLT<SparseMatrix> mass(ops.mass);
  if (mass.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularJacobian, "mass matrix factorization failed");
  }
  auto project = [&](const HermiteDatum& v) -> Vector {
    const auto& fn = v.value;
    return mass.solve(assembler.assemble_load([&fn](std::span<const double> y, double) { return fn(y); }, 0.0));
  };
  return {project(v0), project(v1)};
}

}  // namespace mbeam
