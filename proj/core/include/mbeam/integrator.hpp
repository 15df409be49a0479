#pragma once

/**
 * @file integrator.hpp
 * @brief Newmark-theta time stepping of  M d'' + G(t,d) K1 d + L1 d' + L2 d = F
 *        with a Newton solve per step.
 *
 * With chi^{n+theta} = theta chi^{n-1} + (1 - 2 theta) chi^n + theta chi^{n+1}
 * each step solves
 *
 *   (M1^{n+1} + theta dt^2 G^{n+1}(X) K1) X + Gamma^n = 0,
 *   Gamma^n = M2^n d^n + (M3^{n-1} + theta dt^2 G^{n-1} K1) d^{n-1} - dt^2 F^{n+theta}
 *
 *   M1 = M + dt/2 L1^{n+1} + theta dt^2 L2^{n+1}
 *   M2 = dt^2 (1 - 2 theta)(G^n K1 + L2^n) - 2 M
 *   M3 = M - dt/2 L1^{n-1} + theta dt^2 L2^{n-1}
 *
 * The first step eliminates the ghost level with d^{-1} = d^1 - 2 dt d'(0),
 * takes M3^{-1} ~ M3^0, b1^{-1} ~ b1^0 and F^{0+theta} = theta F^1 + (1-theta) F^0.
 */

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseLU>

#include "mbeam/assembly.hpp"
#include "mbeam/geometry.hpp"
#include "mbeam/types.hpp"

namespace mbeam {

/// How dG/dX is formed. Exact is 2 b1 K1 X; LegacyDiagonal keeps only the
/// diagonal of K1 (2 b1 X_k (K1)_kk).
enum class GradientMode { Exact, LegacyDiagonal };

/// Time level of L1 in M1 and M3. Staggered uses L1^{n+1} and L1^{n-1}, so
/// the velocity term differences L1 d and picks up an extra L1' d when L1
/// varies in time (K'' != 0 or large K'/K). Centered uses L1^n in both.
enum class DampingLevel { Staggered, Centered };

/// Matrix inside G = b1 d^T N d. GradientSeminorm uses N = K1 (the Kirchhoff
/// term). L2 uses N = M and exists only as an experiment.
enum class NonlinearNorm { GradientSeminorm, L2 };

struct NewmarkConfig {
  double theta = 0.25;
  double dt = 1.0 / 128.0;
  int steps = 128;
  double newton_tol_step = 1e-14;
  double newton_tol_resid = 1e-14;
  int newton_max_iter = 50;
  double divergence_threshold = 1e8;
  GradientMode gradient_mode = GradientMode::Exact;
  NonlinearNorm nonlinear_norm = NonlinearNorm::GradientSeminorm;
  DampingLevel damping_level = DampingLevel::Staggered;

  double horizon() const noexcept { return dt * steps; }
  /// Throws Configuration on out-of-range fields.
  void validate() const;
};

/// G = b1 d^T N d.
double g_eval(const Vector& d, const SparseMatrix& norm_matrix, double b1);
/// dG/dd.
Vector g_grad(const Vector& d, const SparseMatrix& norm_matrix, double b1,
              GradientMode mode = GradientMode::Exact);

/// Operators of one time level.
struct TimeLevel {
  EvolutionOperators ops;
  Vector load;  ///< F(t); zero for homogeneous runs
};

struct StepOperators {
  SparseMatrix M1;
  SparseMatrix M2;
  SparseMatrix M3;
  Vector load_theta;  ///< F^{n+theta}
};

/**
 * M1, M2, M3 and F^{n+theta} from the levels n-1, n, n+1. `g_now` is G^n(d^n).
 * With `startup` the levels `before` and `now` are both t_0 and the load uses
 * theta F^1 + (1 - theta) F^0.
 */
StepOperators build_step_operators(const SparseMatrix& mass, const SparseMatrix& stiffness_grad,
                                   const TimeLevel& before, const TimeLevel& now,
                                   const TimeLevel& after, double theta, double dt, double g_now,
                                   bool startup = false,
                                   DampingLevel damping = DampingLevel::Staggered);

/// Jacobian as a sparse part plus a few dense rank-one terms u v^T.
struct StructuredJacobian {
  SparseMatrix base;
  std::vector<std::pair<Vector, Vector>> rank_one;

  DenseMatrix dense() const;
};

/// Nonlinear system of one time step: residual F(X) and its Jacobian.
class StepSystem {
 public:
  struct Inputs {
    const StepOperators* ops = nullptr;
    const SparseMatrix* stiffness_grad = nullptr;  ///< K1
    const SparseMatrix* norm_matrix = nullptr;     ///< N inside G
    double theta = 0.25;
    double dt = 0.0;
    double b1_next = 0.0;  ///< b1 at t_{n+1}
    double b1_prev = 0.0;  ///< b1 at t_{n-1} (t_0 for the first step)
    GradientMode gradient_mode = GradientMode::Exact;
  };

  /// n >= 1: previous states d^n and d^{n-1}.
  static StepSystem regular(const Inputs& in, const Vector& d_now, const Vector& d_before);
  /// n = 0: initial displacement d0 and initial velocity v0 coefficients.
  static StepSystem startup(const Inputs& in, const Vector& d0, const Vector& v0);

  Vector residual(const Vector& X) const;
  StructuredJacobian jacobian(const Vector& X) const;
  bool is_startup() const noexcept { return startup_; }

 private:
  StepSystem() = default;

  Inputs in_;
  bool startup_ = false;
  SparseMatrix lhs_;  ///< M1 (regular) or M1 + M3 (startup)
  Vector gamma_;
  Vector velocity_;   ///< d'(0), startup only
};

/// Direct sparse LU that analyses the sparsity pattern once and refactors
/// numerically afterwards; rank-one terms are handled by Sherman-Morrison-Woodbury.
class JacobianSolver {
 public:
  /// Throws SingularJacobian when the factorization or the capacitance
  /// matrix is singular.
  Vector solve(const StructuredJacobian& J, const Vector& rhs);

 private:
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  bool analysed_ = false;
  Eigen::Index pattern_nnz_ = -1;
  Eigen::Index pattern_rows_ = -1;
};

struct NewtonResult {
  Vector X;
  int iterations = 0;       ///< number of linear solves
  double residual_norm = 0.0;  ///< ||F||_inf at the last evaluated iterate
};

/**
 * X_{k+1} = X_k + s_k with J(X_k) s_k = -F(X_k); stops when
 * ||X_{k+1} - X_k||_inf < tol_step or ||F(X_k)||_inf < tol_resid. Throws
 * NewtonNoConvergence at the iteration cap or on non-finite iterates and
 * SingularJacobian from the linear solve.
 */
NewtonResult newton_solve(const StepSystem& system, const Vector& initial, const NewmarkConfig& config,
                          JacobianSolver& solver);

/// Semi-discrete problem on a fixed space.
struct BeamProblem {
  const Assembler* assembler = nullptr;
  MovingBoundary boundary = MovingBoundary::constant(64.0);
  BeamParameters params{};
  SourceFunction source;  ///< empty: homogeneous
  Vector initial_displacement;
  Vector initial_velocity;
};

struct TraceRecord {
  int step = 0;
  double t = 0.0;
  int newton_iterations = 0;
  double residual_norm = 0.0;
  double dinf = 0.0;
};

enum class RunStatus { Completed, Diverged };

struct Trajectory {
  double dt = 0.0;
  std::vector<Vector> states;  ///< d^0..d^N (or up to the divergence step)
  std::vector<int> newton_iterations;  ///< per computed step (index 0 is the first step)
  RunStatus status = RunStatus::Completed;
  int diverged_step = -1;
  std::string message;

  bool completed() const noexcept { return status == RunStatus::Completed; }
  double time(int step) const noexcept { return step * dt; }
};

struct AdvanceOptions {
  /// Keep every state in the trajectory. Without it only the last accepted
  /// state is kept and observers see the rest.
  bool keep_states = true;
  std::function<void(const TraceRecord&)> trace;
  std::function<void(int step, double t, const Vector& d)> observer;
};

/**
 * Runs the scheme from the initial data for config.steps steps. Hypotheses
 * are not checked here. A state whose sup norm exceeds the divergence
 * threshold, a non-finite state, or a failed Newton solve ends the run with
 * status Diverged and the offending step index.
 */
Trajectory advance(const BeamProblem& problem, const NewmarkConfig& config,
                   const AdvanceOptions& options = {});

}  // namespace mbeam
