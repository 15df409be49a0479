#pragma once

/**
 * @file assembly.hpp
 * @brief Global matrices and vectors of the Galerkin system over the free
 *        (unclamped) Hermite DOFs.
 *
 * Orientation: row = test function, column = trial function, so that the
 * semi-discrete system reads  M d'' + G K1 d + L1 d' + L2 d = F  with
 *
 *   L1(t) = nu M + C4(t)
 *   L2(t) = b2(t) K2 + T(t) + C5(t) - X(t)
 *
 * where T, X, C4, C5 are the tension, cross, velocity-convection and
 * displacement-convection operators below.
 */

#include <functional>
#include <span>
#include <vector>

#include "mbeam/geometry.hpp"
#include "mbeam/space.hpp"
#include "mbeam/types.hpp"

namespace mbeam {

struct AssemblyOptions {
  /// Gauss points per axis for operator integrals. Five points integrate the
  /// degree-6 mass integrand times the quadratic coefficients exactly.
  int operator_points = 5;
  /// Gauss points per axis for load vectors.
  int load_points = 6;
};

struct AssembledOperators {
  SparseMatrix mass;             ///< (phi_k, phi_l)
  SparseMatrix stiffness_grad;   ///< (grad phi_k, grad phi_l)
  SparseMatrix stiffness_bilap;  ///< (lap phi_k, lap phi_l)
  int bandwidth = 0;
};

struct TimeDependentOperators {
  SparseMatrix tension;                  ///< (a1_i d_i phi_k, d_i phi_l)
  SparseMatrix cross;                    ///< (a2_ij d_i phi_k, d_j phi_l)
  SparseMatrix velocity_convection;      ///< (a4_i d_i phi_k, phi_l)
  SparseMatrix displacement_convection;  ///< (a5_i d_i phi_k, phi_l)
};

/// L1, L2 and the scalar coefficients at one time level.
struct EvolutionOperators {
  double t = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  SparseMatrix damping;    ///< L1
  SparseMatrix stiffness;  ///< L2
};

using SourceFunction = std::function<double(std::span<const double> y, double t)>;

/**
 * Owns the sparsity pattern shared by every assembled matrix of one space
 * (all free DOF pairs that share a cell) and the scatter map from element
 * entries into it. Accumulation runs in cell order, so repeated assemblies of
 * the same inputs are bitwise identical.
 */
class Assembler {
 public:
  Assembler(const HermiteSpace& space, AssemblyOptions options = {});

  const HermiteSpace& space() const noexcept { return *space_; }
  const AssemblyOptions& options() const noexcept { return options_; }

  /// Matrix with the shared pattern and all values zero.
  SparseMatrix zero_matrix() const { return pattern_; }

  AssembledOperators assemble_constant() const;
  TimeDependentOperators assemble_time_dependent(const MovingBoundary& boundary,
                                                 const BeamParameters& params, double t) const;
  EvolutionOperators assemble_evolution(const AssembledOperators& constant,
                                        const MovingBoundary& boundary,
                                        const BeamParameters& params, double t) const;
  /// F_l = (f(., t), phi_l). Throws SourceEvaluation on a non-finite sample.
  Vector assemble_load(const SourceFunction& f, double t) const;

  /// Element-level access for tests: the local matrix of the constant
  /// operators on one (any) cell, local ordering as in hermite.hpp.
  struct ElementMatrices {
    DenseMatrix mass, stiffness_grad, stiffness_bilap;
  };
  ElementMatrices constant_element_matrices() const;

 private:
  void scatter(SparseMatrix& m, int cell, const double* local) const;

  const HermiteSpace* space_;
  AssemblyOptions options_;
  SparseMatrix pattern_;
  int local_ = 0;
  /// value index in pattern_ for (cell, p * local + q), -1 when clamped
  std::vector<int> scatter_;
};

AssembledOperators assemble_constant(const HermiteSpace& space, const AssemblyOptions& options = {});
TimeDependentOperators assemble_time_dependent(const HermiteSpace& space,
                                               const MovingBoundary& boundary,
                                               const BeamParameters& params, double t,
                                               const AssemblyOptions& options = {});
Vector assemble_load(const HermiteSpace& space, const SourceFunction& f, double t,
                     const AssemblyOptions& options = {});

enum class InitialDataMode { NodalInterpolation, L2Projection };

struct InitialCoefficients {
  Vector displacement;  ///< d0
  Vector velocity;      ///< d1
};

/// Initial coefficient vectors. Nodal interpolation reads the DOFs off the
/// datum; L2 projection solves M d = (v, phi) and only needs the value
/// callbacks.
InitialCoefficients interpolate_initial(const Assembler& assembler, const HermiteDatum& v0,
                                        const HermiteDatum& v1,
                                        InitialDataMode mode = InitialDataMode::NodalInterpolation);

}  // namespace mbeam
