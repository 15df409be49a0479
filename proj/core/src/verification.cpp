#include "mbeam/verification.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "mbeam/error.hpp"
#include "mbeam/quadrature.hpp"

namespace mbeam {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::span<const double> point_span(const std::array<double, 2>& y, int dim) {
  return {y.data(), static_cast<std::size_t>(dim)};
}

/// int_a^b g(y) dy with 16 Gauss points.
template <class F>
double integrate_axis(double a, double b, F&& g) {
  static const GaussRule1D rule = gauss_legendre(16);
  double s = 0.0;
  for (std::size_t k = 0; k < rule.points.size(); ++k) {
    s += rule.weights[k] * g(a + (b - a) * rule.points[k]);
  }
  return s * (b - a);
}

}  // namespace

double AxisProfile::eval(double y, int k) const {
  if (kind == Kind::QuarticBubble) {
    const double q = (y - a) * (y - b);
    const double qp = 2.0 * y - (a + b);
    switch (k) {
      case 0: return q * q;
      case 1: return 2.0 * q * qp;
      case 2: return 2.0 * qp * qp + 4.0 * q;
      case 3: return 12.0 * qp;
      case 4: return 24.0;
      default: break;
    }
  } else {
    // sin^2(c s) = (1 - cos(w s)) / 2 with w = 2c
    const double w = 2.0 * mode * std::numbers::pi / (b - a);
    const double s = w * (y - a);
    switch (k) {
      case 0: return 0.5 * (1.0 - std::cos(s));
      case 1: return 0.5 * w * std::sin(s);
      case 2: return 0.5 * w * w * std::cos(s);
      case 3: return -0.5 * w * w * w * std::sin(s);
      case 4: return -0.5 * w * w * w * w * std::cos(s);
      default: break;
    }
  }
  throw Error(ErrorKind::Configuration, fmt::format("profile derivative of order {}", k));
}

ManufacturedCase::ManufacturedCase(std::string name, int dim, double amplitude,
                                   TemporalFactor temporal, std::array<AxisProfile, 2> profiles)
    : name_(std::move(name)), dim_(dim), amplitude_(amplitude), temporal_(temporal),
      profiles_(profiles) {
  if (dim != 1 && dim != 2) throw Error(ErrorKind::Configuration, fmt::format("dimension {}", dim));
  std::array<double, 2> mass{1.0, 1.0};
  std::array<double, 2> slope{0.0, 0.0};
  for (int i = 0; i < dim; ++i) {
    const AxisProfile& p = profiles_[i];
    mass[i] = integrate_axis(p.a, p.b, [&](double y) { return p.eval(y, 0) * p.eval(y, 0); });
    slope[i] = integrate_axis(p.a, p.b, [&](double y) { return p.eval(y, 1) * p.eval(y, 1); });
  }
  grad_constant_ = dim == 1 ? slope[0] : slope[0] * mass[1] + mass[0] * slope[1];
}

namespace {

std::array<AxisProfile, 2> quartic_profiles(const Box& box) {
  std::array<AxisProfile, 2> p{};
  for (int i = 0; i < box.dim; ++i) {
    p[i] = {AxisProfile::Kind::QuarticBubble, box.axes[i].lo, box.axes[i].hi, 1};
  }
  return p;
}

}  // namespace

ManufacturedCase ManufacturedCase::s1(const Box& box) {
  return {"S1", box.dim, 0.1, TemporalFactor::Cos, quartic_profiles(box)};
}

ManufacturedCase ManufacturedCase::s2(const Box& box) {
  return {"S2", box.dim, box.dim == 1 ? 1e-3 : 1e-7, TemporalFactor::Sin, quartic_profiles(box)};
}

ManufacturedCase ManufacturedCase::zero(const Box& box) {
  return {"zero", box.dim, 0.0, TemporalFactor::Constant, quartic_profiles(box)};
}

ManufacturedCase ManufacturedCase::by_name(const std::string& name, const Box& box) {
  if (name == "S1") return s1(box);
  if (name == "S2") return s2(box);
  if (name == "zero") return zero(box);
  throw Error(ErrorKind::Configuration, fmt::format("unknown exact solution '{}'", name));
}

double ManufacturedCase::temporal(double t, int k) const {
  const double c = std::cos(kTwoPi * t);
  const double s = std::sin(kTwoPi * t);
  switch (temporal_) {
    case TemporalFactor::Cos:
      return k == 0 ? c : k == 1 ? -kTwoPi * s : -kTwoPi * kTwoPi * c;
    case TemporalFactor::Sin:
      return k == 0 ? s : k == 1 ? kTwoPi * c : -kTwoPi * kTwoPi * s;
    case TemporalFactor::Constant:
      return k == 0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double ManufacturedCase::eval(std::span<const double> y, double t, DerivativeSelector d) const {
  if (d.time < 0 || d.time > 2) {
    throw Error(ErrorKind::Configuration, fmt::format("time derivative of order {}", d.time));
  }
  if (d.space[0] < 0 || d.space[0] > 4 || d.space[1] < 0 || d.space[1] > 4) {
    throw Error(ErrorKind::Configuration, "spatial derivative order must be within 0..4 per axis");
  }
  if (dim_ == 1 && d.space[1] != 0) {
    throw Error(ErrorKind::Configuration, "second-axis derivative of a 1D solution");
  }
  if (static_cast<int>(y.size()) != dim_) {
    throw Error(ErrorKind::Configuration, fmt::format("point of dimension {}", y.size()));
  }
  double v = amplitude_ * temporal(t, d.time) * profiles_[0].eval(y[0], d.space[0]);
  if (dim_ == 2) v *= profiles_[1].eval(y[1], d.space[1]);
  return v;
}

double ManufacturedCase::laplacian(std::span<const double> y, double t, int time_order) const {
  double s = eval(y, t, {time_order, {2, 0}});
  if (dim_ == 2) s += eval(y, t, {time_order, {0, 2}});
  return s;
}

double ManufacturedCase::bilaplacian(std::span<const double> y, double t) const {
  double s = eval(y, t, {0, {4, 0}});
  if (dim_ == 2) s += eval(y, t, {0, {0, 4}}) + 2.0 * eval(y, t, {0, {2, 2}});
  return s;
}

double ManufacturedCase::grad_norm_sq(double t) const {
  const double a = amplitude_ * temporal(t, 0);
  return a * a * grad_constant_;
}

HermiteDatum ManufacturedCase::datum(double t, int time_order) const {
  auto at = [this, t, time_order](int k1, int k2) {
    return [this, t, time_order, k1, k2](std::span<const double> y) {
      return eval(y, t, {time_order, {k1, k2}});
    };
  };
  HermiteDatum d;
  d.value = at(0, 0);
  d.d1 = at(1, 0);
  if (dim_ == 2) {
    d.d2 = at(0, 1);
    d.d12 = at(1, 1);
  }
  return d;
}

HermiteDatum ManufacturedCase::initial_displacement() const { return datum(0.0, 0); }
HermiteDatum ManufacturedCase::initial_velocity() const { return datum(0.0, 1); }

double strong_operator(const ManufacturedCase& v, const BoundaryState& state,
                       const BeamParameters& params, std::span<const double> y, double t,
                       SourceForm form) {
  const int n = v.dim();
  const CoefficientSet c = eval_coefficients(state, params, y);
  auto d1 = [&](int i, int time) {
    DerivativeSelector s{time, {0, 0}};
    s.space[i] = 1;
    return v.eval(y, t, s);
  };
  auto d2 = [&](int i, int j) {
    DerivativeSelector s{0, {0, 0}};
    s.space[i] += 1;
    s.space[j] += 1;
    return v.eval(y, t, s);
  };
  double f = -c.b1 * v.grad_norm_sq(t) * v.laplacian(y, t) + c.b2 * v.bilaplacian(y, t) +
             params.nu * v.eval(y, t, {1, {0, 0}});
  for (int i = 0; i < n; ++i) {
    const double vi = d1(i, 0);
    const double vti = d1(i, 1);
    if (form == SourceForm::ConsistentWeakForm) {
      f += (c.div_a2[i] - c.div_a1[i] + c.a5[i]) * vi + c.a4[i] * vti - c.a1[i] * d2(i, i);
      for (int j = 0; j < n; ++j) f += c.a2[i][j] * d2(i, j);
    } else {
      f += -c.a3[i] * vi - c.a4[i] * vti - c.a1[i] * d2(i, i);
      for (int j = 0; j < n; ++j) f += c.a2[i][j] * d2(i, j);
    }
  }
  return f;
}

double manufactured_source(const ManufacturedCase& v, const MovingBoundary& boundary,
                           const BeamParameters& params, std::span<const double> y, double t,
                           SourceForm form) {
  const BoundaryState state = boundary.eval(t);
  return v.eval(y, t, {2, {0, 0}}) + strong_operator(v, state, params, y, t, form);
}

SourceFunction make_source(const ManufacturedCase& v, const MovingBoundary& boundary,
                           const BeamParameters& params, SourceForm form) {
  return [v, boundary, params, form](std::span<const double> y, double t) {
    return manufactured_source(v, boundary, params, y, t, form);
  };
}

ConsistencyResult weak_strong_consistency_check(const Assembler& assembler,
                                                const MovingBoundary& boundary,
                                                const BeamParameters& params, double t,
                                                const ManufacturedCase& v,
                                                const ManufacturedCase& w, SourceForm form) {
  const HermiteSpace& space = assembler.space();
  const AssembledOperators constant = assembler.assemble_constant();
  const EvolutionOperators ev = assembler.assemble_evolution(constant, boundary, params, t);
  const Vector vh = space.interpolate(v.datum(t, 0));
  const Vector vth = space.interpolate(v.datum(t, 1));
  const Vector wh = space.interpolate(w.datum(t, 0));
  const double G = g_eval(vh, constant.stiffness_grad, ev.b1);

  const BoundaryState state = boundary.eval(t);
  const Vector load = assembler.assemble_load(
      [&](std::span<const double> y, double) { return strong_operator(v, state, params, y, t, form); }, t);

  ConsistencyResult r;
  r.weak = wh.dot(ev.damping * vth + G * (constant.stiffness_grad * vh) + ev.stiffness * vh);
  r.strong = wh.dot(load);
  r.residual = std::abs(r.weak - r.strong);
  return r;
}

std::pair<double, double> state_errors(const HermiteSpace& space, const Vector& d,
                                       const ManufacturedCase& v, double t,
                                       const ErrorNormOptions& options) {
  const Mesh& mesh = space.mesh();
  const int dim = mesh.dim;
  const auto rule = quadrature(dim, options.quadrature_points);
  const auto shapes = space.tabulate(rule);
  const double measure = dim == 1 ? mesh.h[0] : mesh.h[0] * mesh.h[1];
  double l2 = 0.0;
  double h2 = 0.0;
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    std::array<double, 4> corner{0.0, 0.0, 0.0, 0.0};
    if (options.reconstruction == Reconstruction::NodalLinear) {
      const int corners = dim == 1 ? 2 : 4;
      for (int c = 0; c < corners; ++c) {
        const int q = dim == 1 ? 2 * c : 4 * c;
        const int idx = space.free_index(space.global_dof(cell, q));
        corner[c] = idx < 0 ? 0.0 : d[idx];
      }
    }
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const auto y = space.to_physical(cell, rule[k].xi);
      const auto ys = point_span(y, dim);
      const double w = rule[k].weight * measure;
      if (options.reconstruction == Reconstruction::Hermite) {
        const FieldValue f = space.evaluate_shapes(d, cell, shapes[k]);
        const double e = f.value - v.eval(ys, t);
        const double el = f.laplacian() - v.laplacian(ys, t);
        l2 += w * e * e;
        h2 += w * el * el;
      } else {
        const double x = rule[k].xi[0];
        double vh = (1.0 - x) * corner[0] + x * corner[1];
        if (dim == 2) {
          const double z = rule[k].xi[1];
          vh = (1.0 - z) * vh + z * ((1.0 - x) * corner[2] + x * corner[3]);
        }
        const double e = vh - v.eval(ys, t);
        l2 += w * e * e;
      }
    }
  }
  return {std::sqrt(l2), std::sqrt(h2)};
}

namespace {

void record(ErrorReport& r, double t, std::pair<double, double> e) {
  r.times.push_back(t);
  r.l2.push_back(e.first);
  r.h2.push_back(e.second);
  r.linf_l2 = std::max(r.linf_l2, e.first);
  r.linf_h2 = std::max(r.linf_h2, e.second);
}

void mark_diverged(ErrorReport& r, int step) {
  r.diverged = true;
  r.diverged_step = step;
  r.linf_l2 = std::numeric_limits<double>::quiet_NaN();
  r.linf_h2 = std::numeric_limits<double>::quiet_NaN();
  r.times.clear();
  r.l2.clear();
  r.h2.clear();
}

}  // namespace

ErrorReport error_norms(const Trajectory& trajectory, const ManufacturedCase& v,
                        const HermiteSpace& space, const ErrorNormOptions& options) {
  ErrorReport r;
  if (!trajectory.completed()) {
    mark_diverged(r, trajectory.diverged_step);
    return r;
  }
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    const double t = trajectory.time(static_cast<int>(k));
    record(r, t, state_errors(space, trajectory.states[k], v, t, options));
  }
  return r;
}

int cells_for(double length, double h) {
  if (!(h > 0.0) || !(length > 0.0)) {
    throw Error(ErrorKind::Configuration, fmt::format("mesh size h = {} must be positive", h));
  }
  const double r = length / h;
  const long long n = std::llround(r);
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * std::max(1.0, r)) {
    throw Error(ErrorKind::Configuration,
                fmt::format("h = {} does not divide the box length {}", h, length));
  }
  return static_cast<int>(n);
}

int steps_for(double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw Error(ErrorKind::Configuration, fmt::format("dt = {} and T = {} must be positive", dt, horizon));
  }
  const double r = horizon / dt;
  const long long n = std::llround(r);
  if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-9 * std::max(1.0, r)) {
    throw Error(ErrorKind::Configuration, fmt::format("dt = {} does not divide T = {}", dt, horizon));
  }
  return static_cast<int>(n);
}

LevelResult run_level(const StudySetup& setup, int cells, double dt, bool with_nodal_linear) {
  const HermiteSpace space(Mesh::uniform(setup.box, cells));
  const Assembler assembler(space, setup.assembly);
  const InitialCoefficients init = interpolate_initial(
      assembler, setup.exact.initial_displacement(), setup.exact.initial_velocity(), setup.initial_data);

  BeamProblem problem;
  problem.assembler = &assembler;
  problem.boundary = setup.boundary;
  problem.params = setup.params;
  if (setup.exact.amplitude() != 0.0) {
    problem.source = make_source(setup.exact, setup.boundary, setup.params, setup.source_form);
  }
  problem.initial_displacement = init.displacement;
  problem.initial_velocity = init.velocity;

  NewmarkConfig config = setup.newmark;
  config.dt = dt;
  config.steps = steps_for(setup.horizon, dt);

  LevelResult out;
  out.cells = cells;
  out.h = space.mesh().h[0];
  out.dt = dt;
  out.steps = config.steps;
  ErrorReport linear;
  ErrorNormOptions linear_opts = setup.norms;
  linear_opts.reconstruction = Reconstruction::NodalLinear;

  AdvanceOptions opts;
  opts.keep_states = false;
  opts.observer = [&](int, double t, const Vector& d) {
    record(out.report, t, state_errors(space, d, setup.exact, t, setup.norms));
    if (with_nodal_linear) record(linear, t, state_errors(space, d, setup.exact, t, linear_opts));
  };
  const Trajectory traj = advance(problem, config, opts);
  if (!traj.completed()) {
    mark_diverged(out.report, traj.diverged_step);
    mark_diverged(linear, traj.diverged_step);
  }
  if (with_nodal_linear) out.nodal_linear = std::move(linear);
  return out;
}

void fill_rates(ConvergenceTable& table) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    ConvergenceRow& row = table.rows[i];
    row.rate.reset();
    if (i == 0 || row.diverged || table.rows[i - 1].diverged) continue;
    row.rate = std::log2(table.rows[i - 1].error / row.error);
  }
}

ConvergenceTable convergence_study(const StudySetup& setup, const StudyPlan& plan) {
  if (plan.levels < 2) {
    throw Error(ErrorKind::Configuration, fmt::format("a study needs at least 2 levels, got {}", plan.levels));
  }
  const double length = setup.box.axes[0].length();
  ConvergenceTable table;
  table.mode = plan.mode;
  for (int i = plan.first_level; i < plan.first_level + plan.levels; ++i) {
    double h = plan.fixed_h;
    double dt = plan.fixed_dt;
    switch (plan.mode) {
      case StudyMode::FixHVaryDt: dt = std::ldexp(1.0, -(i + 1)); break;
      case StudyMode::FixDtVaryH: h = std::ldexp(1.0, -i); break;
      case StudyMode::CoupledHEq2Dt:
        dt = std::ldexp(1.0, -(i + 1));
        h = 2.0 * dt;
        break;
    }
    const LevelResult res = run_level(setup, cells_for(length, h), dt, plan.nodal_linear);
    ConvergenceRow row;
    row.level = i;
    row.h = res.h;
    row.dt = dt;
    row.diverged = res.report.diverged;
    row.error = res.report.linf_l2;
    if (res.nodal_linear) row.nodal_linear_error = res.nodal_linear->linf_l2;
    table.rows.push_back(row);
  }
  fill_rates(table);
  return table;
}

std::vector<ThetaCell> theta_sweep(const StudySetup& setup, std::span<const double> h_list,
                                   std::span<const double> theta_list, double dt, bool nodal_linear) {
  const double length = setup.box.axes[0].length();
  std::vector<ThetaCell> cells;
  for (const double h : h_list) {
    const int n = cells_for(length, h);
    for (const double theta : theta_list) {
      StudySetup s = setup;
      s.newmark.theta = theta;
      const LevelResult res = run_level(s, n, dt, nodal_linear);
      ThetaCell c;
      c.h = res.h;
      c.theta = theta;
      c.diverged = res.report.diverged;
      c.error = res.report.linf_l2;
      if (res.nodal_linear) c.nodal_linear_error = res.nodal_linear->linf_l2;
      cells.push_back(c);
    }
  }
  return cells;
}

double energy(const HermiteSpace& space, const Vector& d, const Vector& velocity,
              const MovingBoundary& boundary, const BeamParameters& params, double t,
              int quadrature_points) {
  if (!d.allFinite() || !velocity.allFinite()) {
    throw Error(ErrorKind::Diverged, fmt::format("non-finite state at t = {}", t));
  }
  const Mesh& mesh = space.mesh();
  const int dim = mesh.dim;
  const BoundaryState s = boundary.eval(t);
  if (!(s.K > 0.0)) throw Error(ErrorKind::SingularMapping, fmt::format("K({}) = {}", t, s.K));
  const double ratio = s.Kp / s.K;
  const double k2 = 1.0 / (s.K * s.K);
  const double k4 = k2 * k2;
  const double jac = dim == 1 ? s.K : s.K * s.K;
  const auto rule = quadrature(dim, quadrature_points);
  const auto shapes = space.tabulate(rule);
  const double measure = dim == 1 ? mesh.h[0] : mesh.h[0] * mesh.h[1];
  double sum = 0.0;
  for (int cell = 0; cell < mesh.cell_count(); ++cell) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const FieldValue u = space.evaluate_shapes(d, cell, shapes[k]);
      const FieldValue ut = space.evaluate_shapes(velocity, cell, shapes[k]);
      const auto y = space.to_physical(cell, rule[k].xi);
      double ygrad = 0.0;
      double g2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        ygrad += y[i] * u.grad[i];
        g2 += u.grad[i] * u.grad[i];
      }
      const double up = ut.value - ratio * ygrad;
      const double lap = u.laplacian();
      sum += rule[k].weight * measure *
             (up * up + k4 * lap * lap + params.zeta0 * k2 * g2 + 0.5 * params.zeta1 * k4 * g2 * g2);
    }
  }
  return 0.5 * jac * sum;
}

EnergyRecorder::EnergyRecorder(const HermiteSpace& space, MovingBoundary boundary,
                               BeamParameters params, double dt, int stride)
    : space_(&space), boundary_(std::move(boundary)), params_(params), dt_(dt),
      stride_(std::max(1, stride)) {}

void EnergyRecorder::emit(int step, const Vector& d, const Vector& velocity) {
  if (step % stride_ != 0) return;
  const double t = step * dt_;
  samples_.push_back({t, energy(*space_, d, velocity, boundary_, params_, t)});
}

void EnergyRecorder::push(int step, const Vector& d) {
  if (!window_.empty() && step != window_.back().first + 1) {
    throw Error(ErrorKind::Configuration, "energy states must arrive in consecutive steps");
  }
  window_.emplace_back(step, d);
  if (window_.size() > 3) window_.erase(window_.begin());
  if (window_.size() < 3) return;
  const double inv = 1.0 / (2.0 * dt_);
  if (!started_) {
    const Vector& d0 = window_[0].second;
    emit(window_[0].first, d0, (-3.0 * d0 + 4.0 * window_[1].second - window_[2].second) * inv);
    started_ = true;
  }
  emit(window_[1].first, window_[1].second, (window_[2].second - window_[0].second) * inv);
}

std::vector<EnergySample> EnergyRecorder::finish() {
  if (window_.size() < 3) {
    throw Error(ErrorKind::Configuration, "energy series needs at least three states");
  }
  const Vector& last = window_[2].second;
  emit(window_[2].first, last,
       (3.0 * last - 4.0 * window_[1].second + window_[0].second) / (2.0 * dt_));
  window_.clear();
  started_ = false;
  return std::move(samples_);
}

std::vector<EnergySample> energy_series(const Trajectory& trajectory, const HermiteSpace& space,
                                        const MovingBoundary& boundary,
                                        const BeamParameters& params, int stride) {
  if (!trajectory.completed()) {
    throw Error(ErrorKind::Diverged, fmt::format("trajectory diverged: {}", trajectory.message));
  }
  EnergyRecorder rec(space, boundary, params, trajectory.dt, stride);
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) rec.push(static_cast<int>(k), trajectory.states[k]);
  return rec.finish();
}

double DecayFit::time_to(double level) const {
  if (!(A1 > 0.0)) return std::numeric_limits<double>::infinity();
  return std::log(A0 / level) / A1;
}

DecayFit decay_fit(std::span<const EnergySample> series, double t0, double t1) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : series) {
    if (s.t < t0 || s.t > t1) continue;
    if (!(s.E > 0.0)) {
      throw Error(ErrorKind::FitDomain, fmt::format("energy {} at t = {} is not positive", s.E, s.t));
    }
    x.push_back(s.t);
    y.push_back(std::log(s.E));
  }
  if (x.size() < 2) {
    throw Error(ErrorKind::FitDomain, fmt::format("{} samples in [{}, {}]", x.size(), t0, t1));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::FitDomain, "all samples at the same time");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (intercept + slope * x[i]);
    ss_res += r * r;
  }
  DecayFit fit;
  fit.A0 = std::exp(intercept);
  fit.A1 = -slope;
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.samples = static_cast<int>(x.size());
  return fit;
}

}  // namespace mbeam
