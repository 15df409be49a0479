#include "mbeam/integrator.hpp"

#include <cmath>
#include <map>

#include <Eigen/LU>
#include <fmt/format.h>

#include "mbeam/error.hpp"

namespace mbeam {

void NewmarkConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Configuration, what); };
  if (!(theta >= 0.0 && theta <= 1.0)) fail(fmt::format("theta = {} outside [0, 1]", theta));
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(fmt::format("dt = {} must be positive", dt));
  if (steps < 1) fail(fmt::format("steps = {} must be at least 1", steps));
  if (!(newton_tol_step > 0.0) || !(newton_tol_resid > 0.0)) fail("Newton tolerances must be positive");
  if (newton_max_iter < 1) fail("Newton iteration cap must be at least 1");
  if (!(divergence_threshold > 0.0)) fail("divergence threshold must be positive");
}

double g_eval(const Vector& d, const SparseMatrix& norm_matrix, double b1) {
  return b1 * d.dot(norm_matrix * d);
}

Vector g_grad(const Vector& d, const SparseMatrix& norm_matrix, double b1, GradientMode mode) {
  if (mode == GradientMode::Exact) return 2.0 * b1 * (norm_matrix * d);
  return 2.0 * b1 * norm_matrix.diagonal().cwiseProduct(d);
}

StepOperators build_step_operators(const SparseMatrix& mass, const SparseMatrix& stiffness_grad,
                                   const TimeLevel& before, const TimeLevel& now,
                                   const TimeLevel& after, double theta, double dt, double g_now,
                                   bool startup, DampingLevel damping) {
  const double dt2 = dt * dt;
  const bool centered = damping == DampingLevel::Centered;
  const SparseMatrix& L1_after = centered ? now.ops.damping : after.ops.damping;
  const SparseMatrix& L1_before = centered ? now.ops.damping : before.ops.damping;
  StepOperators s;
  s.M1 = mass + (0.5 * dt) * L1_after + (theta * dt2) * after.ops.stiffness;
  s.M2 = (dt2 * (1.0 - 2.0 * theta)) * (g_now * stiffness_grad + now.ops.stiffness) - 2.0 * mass;
  s.M3 = mass - (0.5 * dt) * L1_before + (theta * dt2) * before.ops.stiffness;
  if (startup) {
    s.load_theta = theta * after.load + (1.0 - theta) * now.load;
  } else {
    s.load_theta = theta * before.load + (1.0 - 2.0 * theta) * now.load + theta * after.load;
  }
  return s;
}

DenseMatrix StructuredJacobian::dense() const {
  DenseMatrix J = DenseMatrix(base);
  for (const auto& [u, v] : rank_one) J.noalias() += u * v.transpose();
  return J;
}

StepSystem StepSystem::regular(const Inputs& in, const Vector& d_now, const Vector& d_before) {
  StepSystem s;
  s.in_ = in;
  s.startup_ = false;
  s.lhs_ = in.ops->M1;
  const double g_before = g_eval(d_before, *in.norm_matrix, in.b1_prev);
  s.gamma_ = in.ops->M2 * d_now + in.ops->M3 * d_before +
             (in.theta * in.dt * in.dt * g_before) * (*in.stiffness_grad * d_before) -
             (in.dt * in.dt) * in.ops->load_theta;
  return s;
}

StepSystem StepSystem::startup(const Inputs& in, const Vector& d0, const Vector& v0) {
  StepSystem s;
  s.in_ = in;
  s.startup_ = true;
  s.lhs_ = in.ops->M1 + in.ops->M3;
  s.velocity_ = v0;
  s.gamma_ = in.ops->M2 * d0 - (2.0 * in.dt) * (in.ops->M3 * v0) - (in.dt * in.dt) * in.ops->load_theta;
  return s;
}

Vector StepSystem::residual(const Vector& X) const {
  const double c = in_.theta * in_.dt * in_.dt;
  const SparseMatrix& K1 = *in_.stiffness_grad;
  Vector r = lhs_ * X + gamma_;
  r += (c * g_eval(X, *in_.norm_matrix, in_.b1_next)) * (K1 * X);
  if (startup_) {
    const Vector ghost = X - (2.0 * in_.dt) * velocity_;
    r += (c * g_eval(ghost, *in_.norm_matrix, in_.b1_prev)) * (K1 * ghost);
  }
  return r;
}

StructuredJacobian StepSystem::jacobian(const Vector& X) const {
  const double c = in_.theta * in_.dt * in_.dt;
  const SparseMatrix& K1 = *in_.stiffness_grad;
  const SparseMatrix& N = *in_.norm_matrix;
  StructuredJacobian J;
  double g = g_eval(X, N, in_.b1_next);
  J.rank_one.emplace_back(c * (K1 * X), g_grad(X, N, in_.b1_next, in_.gradient_mode));
  if (startup_) {
    const Vector ghost = X - (2.0 * in_.dt) * velocity_;
    g += g_eval(ghost, N, in_.b1_prev);
    J.rank_one.emplace_back(c * (K1 * ghost), g_grad(ghost, N, in_.b1_prev, in_.gradient_mode));
  }
  J.base = lhs_ + (c * g) * K1;
  std::erase_if(J.rank_one, [](const auto& uv) { return uv.first.isZero(0.0) || uv.second.isZero(0.0); });
  return J;
}

Vector JacobianSolver::solve(const StructuredJacobian& J, const Vector& rhs) {
  if (!analysed_ || J.base.nonZeros() != pattern_nnz_ || J.base.rows() != pattern_rows_) {
    lu_.analyzePattern(J.base);
    analysed_ = true;
    pattern_nnz_ = J.base.nonZeros();
    pattern_rows_ = J.base.rows();
  }
  lu_.factorize(J.base);
  if (lu_.info() != Eigen::Success) {
    throw Error(ErrorKind::SingularJacobian, fmt::format("sparse LU failed: {}", lu_.lastErrorMessage()));
  }
  Vector y = lu_.solve(rhs);
  const auto k = static_cast<Eigen::Index>(J.rank_one.size());
  if (k == 0) return y;

  DenseMatrix Z(rhs.size(), k);
  DenseMatrix C = DenseMatrix::Identity(k, k);
  Vector vy(k);
  for (Eigen::Index a = 0; a < k; ++a) Z.col(a) = lu_.solve(J.rank_one[a].first);
  for (Eigen::Index a = 0; a < k; ++a) {
    const Vector& v = J.rank_one[a].second;
    vy[a] = v.dot(y);
    for (Eigen::Index b = 0; b < k; ++b) C(a, b) += v.dot(Z.col(b));
  }
  Eigen::FullPivLU<DenseMatrix> cap(C);
  if (!cap.isInvertible()) {
    throw Error(ErrorKind::SingularJacobian, "rank-one correction is singular");
  }
  y.noalias() -= Z * cap.solve(vy);
  return y;
}

NewtonResult newton_solve(const StepSystem& system, const Vector& initial, const NewmarkConfig& config,
                          JacobianSolver& solver) {
  NewtonResult out;
  out.X = initial;
  for (int k = 0;; ++k) {
    const Vector F = system.residual(out.X);
    out.residual_norm = F.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(out.residual_norm)) {
      throw Error(ErrorKind::NewtonNoConvergence, fmt::format("non-finite residual at iteration {}", k));
    }
    if (out.residual_norm < config.newton_tol_resid) return out;
    if (k == config.newton_max_iter) {
      throw Error(ErrorKind::NewtonNoConvergence,
                  fmt::format("{} iterations, residual {:.3e}", k, out.residual_norm));
    }
    const Vector s = solver.solve(system.jacobian(out.X), -F);
    out.X += s;
    out.iterations = k + 1;
    const double step = s.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(step)) {
      throw Error(ErrorKind::NewtonNoConvergence, fmt::format("non-finite update at iteration {}", k + 1));
    }
    if (step < config.newton_tol_step) {
      out.residual_norm = system.residual(out.X).lpNorm<Eigen::Infinity>();
      return out;
    }
  }
}

namespace {

/// Operators and loads by step index, assembled on demand and dropped once
/// they fall behind the three-level window.
class LevelCache {
 public:
  LevelCache(const BeamProblem& problem, const AssembledOperators& constant, double dt)
      : problem_(problem), constant_(constant), dt_(dt) {}

  const TimeLevel& at(int step) {
    auto it = levels_.find(step);
    if (it != levels_.end()) return it->second;
    const double t = step * dt_;
    const Assembler& as = *problem_.assembler;
    TimeLevel lv;
    lv.ops = as.assemble_evolution(constant_, problem_.boundary, problem_.params, t);
    lv.load = problem_.source ? as.assemble_load(problem_.source, t)
                              : Vector::Zero(as.space().free_count());
    return levels_.emplace(step, std::move(lv)).first->second;
  }

  void drop_before(int step) { levels_.erase(levels_.begin(), levels_.lower_bound(step)); }

 private:
  const BeamProblem& problem_;
  const AssembledOperators& constant_;
  double dt_;
  std::map<int, TimeLevel> levels_;
};

}  // namespace

Trajectory advance(const BeamProblem& problem, const NewmarkConfig& config,
                   const AdvanceOptions& options) {
  config.validate();
  if (problem.assembler == nullptr) throw Error(ErrorKind::Configuration, "problem has no assembler");
  const int n = problem.assembler->space().free_count();
  if (problem.initial_displacement.size() != n || problem.initial_velocity.size() != n) {
    throw Error(ErrorKind::Configuration,
                fmt::format("initial data has {}/{} coefficients, space has {}",
                            problem.initial_displacement.size(), problem.initial_velocity.size(), n));
  }

  const AssembledOperators constant = problem.assembler->assemble_constant();
  const SparseMatrix& norm =
      config.nonlinear_norm == NonlinearNorm::L2 ? constant.mass : constant.stiffness_grad;
  LevelCache levels(problem, constant, config.dt);
  JacobianSolver solver;

  Trajectory traj;
  traj.dt = config.dt;
  Vector before;
  Vector now = problem.initial_displacement;
  if (options.keep_states) traj.states.push_back(now);
  if (options.observer) options.observer(0, 0.0, now);
  if (options.trace) options.trace({0, 0.0, 0, 0.0, now.lpNorm<Eigen::Infinity>()});

  for (int eta = 0; eta < config.steps; ++eta) {
    const bool first = eta == 0;
    const TimeLevel& lv_before = levels.at(first ? 0 : eta - 1);
    const TimeLevel& lv_now = levels.at(eta);
    const TimeLevel& lv_after = levels.at(eta + 1);
    const double g_now = g_eval(now, norm, lv_now.ops.b1);
    const StepOperators ops = build_step_operators(constant.mass, constant.stiffness_grad, lv_before,
                                                   lv_now, lv_after, config.theta, config.dt, g_now,
                                                   first, config.damping_level);
    StepSystem::Inputs in;
    in.ops = &ops;
    in.stiffness_grad = &constant.stiffness_grad;
    in.norm_matrix = &norm;
    in.theta = config.theta;
    in.dt = config.dt;
    in.b1_next = lv_after.ops.b1;
    in.b1_prev = lv_before.ops.b1;
    in.gradient_mode = config.gradient_mode;

    const StepSystem system = first ? StepSystem::startup(in, now, problem.initial_velocity)
                                    : StepSystem::regular(in, now, before);
    const Vector guess = first ? Vector(now + config.dt * problem.initial_velocity)
                               : Vector(2.0 * now - before);
    const int step = eta + 1;
    const double t = step * config.dt;

    NewtonResult res;
    try {
      res = newton_solve(system, guess, config, solver);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NewtonNoConvergence && e.kind() != ErrorKind::SingularJacobian) throw;
      traj.status = RunStatus::Diverged;
      traj.diverged_step = step;
      traj.message = fmt::format("step {} (t = {}): {}", step, t, e.what());
      break;
    }
    traj.newton_iterations.push_back(res.iterations);
    const double dinf = res.X.lpNorm<Eigen::Infinity>();
    if (options.trace) options.trace({step, t, res.iterations, res.residual_norm, dinf});
    if (!std::isfinite(dinf) || dinf > config.divergence_threshold) {
      traj.status = RunStatus::Diverged;
      traj.diverged_step = step;
      traj.message = fmt::format("step {} (t = {}): ||d||_inf = {:.3e}", step, t, dinf);
      break;
    }
    before = std::move(now);
    now = std::move(res.X);
    if (options.keep_states) traj.states.push_back(now);
    if (options.observer) options.observer(step, t, now);
    levels.drop_before(eta);
  }
  if (!options.keep_states) traj.states.push_back(now);
  return traj;
}

}  // namespace mbeam
