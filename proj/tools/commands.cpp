#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include <mbeam/assembly.hpp>
#include <mbeam/integrator.hpp>
#include <mbeam/space.hpp>
#include <mbeam/verification.hpp>

namespace mbeam::cli {

namespace {

std::string num(double v) { return fmt::format("{:.12e}", v); }

class Csv {
 public:
  Csv(const RunConfig& config, const std::string& name, const std::string& header)
      : path_(std::filesystem::path(config.out) / name) {
    text_ = header + "\n";
  }
  template <class... Cells>
  void row(const Cells&... cells) {
    std::string line;
    ((line += (line.empty() ? "" : ",") + std::string(cells)), ...);
    text_ += line + "\n";
  }
  void write() const {
    std::filesystem::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw Error(ErrorKind::Configuration, fmt::format("cannot write {}", path_.string()));
    out << text_;
  }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
  std::string text_;
};

/// 0 when the hypotheses hold (or only waivable ones fail in relaxed mode).
int check_hypotheses(const RunConfig& config, bool verbose) {
  const ValidationReport report =
      validate_hypotheses(config.make_boundary(), config.make_params(), config.resolved_horizon());
  const bool ok = report.acceptable(config.relaxed);
  if (verbose || !ok) fmt::print("{}", report.summary());
  if (!ok) {
    fmt::print("hypotheses not satisfied{}\n",
               config.relaxed ? "" : " (relaxed: true waives K' = 0 and zero zeta1/nu)");
    return kHypothesisError;
  }
  return kSuccess;
}

struct Run {
  HermiteSpace space;
  Assembler assembler;
  BeamProblem problem;
  NewmarkConfig newmark;

  explicit Run(const RunConfig& c)
      : space(Mesh::uniform(c.box(), c.resolved_cells())), assembler(space, c.make_assembly()) {
    const StudySetup s = c.make_study();
    const InitialCoefficients init = interpolate_initial(
        assembler, s.exact.initial_displacement(), s.exact.initial_velocity(), s.initial_data);
    problem.assembler = &assembler;
    problem.boundary = s.boundary;
    problem.params = s.params;
    if (!c.homogeneous && s.exact.amplitude() != 0.0) {
      problem.source = make_source(s.exact, s.boundary, s.params, s.source_form);
    }
    problem.initial_displacement = init.displacement;
    problem.initial_velocity = init.velocity;
    newmark = c.make_newmark();
  }
};

void write_solution(const RunConfig& config, const HermiteSpace& space, const Vector& d, double t) {
  const bool two = space.dim() == 2;
  Csv csv(config, fmt::format("solution_{}.csv", t), two ? "y1,y2,value" : "y,value");
  const auto nodal = space.nodal_values(d);
  for (std::size_t k = 0; k < nodal.values.size(); ++k) {
    if (two) {
      csv.row(num(nodal.coords[k][0]), num(nodal.coords[k][1]), num(nodal.values[k]));
    } else {
      csv.row(num(nodal.coords[k][0]), num(nodal.values[k]));
    }
  }
  csv.write();
}

StudyMode study_mode(const RunConfig& c) {
  if (c.study_mode == "fix_h") return StudyMode::FixHVaryDt;
  if (c.study_mode == "fix_dt") return StudyMode::FixDtVaryH;
  return StudyMode::CoupledHEq2Dt;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Configuration: return kConfigError;
    case ErrorKind::NewtonNoConvergence:
    case ErrorKind::Diverged: return kDivergence;
    default: return kNumericError;
  }
}

int cmd_validate(const RunConfig& config) {
  const int rc = check_hypotheses(config, true);
  if (rc == kSuccess) fmt::print("hypotheses satisfied on [0, {}]\n", config.resolved_horizon());
  return rc;
}

int cmd_solve(const RunConfig& config) {
  if (int rc = check_hypotheses(config, false)) return rc;
  Run run(config);
  const int steps = run.newmark.steps;
  const double dt = run.newmark.dt;

  std::map<int, double> snapshots;
  if (config.snapshots.empty()) {
    snapshots[steps] = config.resolved_horizon();
  }
  for (double t : config.snapshots) {
    const long long k = std::llround(t / dt);
    if (k > steps || std::abs(k * dt - t) > 1e-9 * std::max(1.0, t)) {
      throw Error(ErrorKind::Configuration,
                  fmt::format("snapshots: t = {} is not a step time in [0, {}]", t, steps * dt));
    }
    snapshots[static_cast<int>(k)] = t;
  }

  Csv trace(config, "trace.csv", "step,t,newton_iters,res_norm,dinf");
  AdvanceOptions opts;
  opts.keep_states = false;
  opts.trace = [&](const TraceRecord& r) {
    trace.row(std::to_string(r.step), num(r.t), std::to_string(r.newton_iterations), num(r.residual_norm),
              num(r.dinf));
  };
  opts.observer = [&](int step, double, const Vector& d) {
    if (auto it = snapshots.find(step); it != snapshots.end()) write_solution(config, run.space, d, it->second);
  };
  const Trajectory traj = advance(run.problem, run.newmark, opts);
  trace.write();
  if (!traj.completed()) {
    fmt::print("diverged at {}\n", traj.message);
    return kDivergence;
  }
  const int max_iter = traj.newton_iterations.empty()
                           ? 0
                           : *std::max_element(traj.newton_iterations.begin(), traj.newton_iterations.end());
  fmt::print("{} steps of dt = {} on {} free DOFs, max Newton iterations {}, ||d(T)||_inf = {:.6e}\n", steps,
             dt, run.space.free_count(), max_iter, traj.states.back().lpNorm<Eigen::Infinity>());
  return kSuccess;
}

int cmd_mms(const RunConfig& config) {
  if (int rc = check_hypotheses(config, false)) return rc;
  const StudySetup setup = config.make_study();
  const LevelResult res = run_level(setup, config.resolved_cells(), config.dt);
  if (res.report.diverged) {
    fmt::print("diverged at step {}\n", res.report.diverged_step);
    return kDivergence;
  }
  Csv csv(config, "errors.csv", "t,error_l2,error_lap");
  for (std::size_t k = 0; k < res.report.times.size(); ++k) {
    csv.row(num(res.report.times[k]), num(res.report.l2[k]), num(res.report.h2[k]));
  }
  csv.write();
  fmt::print("h = {}, dt = {}, steps = {}: max L2 error {:.6e}, max laplacian error {:.6e}\n", res.h, res.dt,
             res.steps, res.report.linf_l2, res.report.linf_h2);
  return kSuccess;
}

int cmd_convergence(const RunConfig& config) {
  if (int rc = check_hypotheses(config, false)) return rc;
  const StudySetup setup = config.make_study();
  StudyPlan plan;
  plan.mode = study_mode(config);
  plan.first_level = config.first_level;
  plan.levels = config.levels;
  plan.fixed_h = (config.box_hi - config.box_lo) / config.resolved_cells();
  plan.fixed_dt = config.dt;
  const ConvergenceTable table = convergence_study(setup, plan);
  Csv csv(config, "convergence.csv", "level,h,dt,error_linf_l2,rate");
  for (const auto& r : table.rows) {
    csv.row(std::to_string(r.level), num(r.h), num(r.dt), r.diverged ? std::string("DIVERGE") : num(r.error),
            r.rate ? num(*r.rate) : std::string());
    fmt::print("level {}  h = {:<10} dt = {:<10} error = {:<14} rate = {}\n", r.level, r.h, r.dt,
               r.diverged ? std::string("DIVERGE") : fmt::format("{:.4e}", r.error),
               r.rate ? fmt::format("{:.3f}", *r.rate) : std::string("-"));
  }
  csv.write();
  return kSuccess;
}

int cmd_theta_sweep(const RunConfig& config) {
  if (int rc = check_hypotheses(config, false)) return rc;
  const StudySetup setup = config.make_study();
  const auto cells = theta_sweep(setup, config.h_list, config.theta_list, config.dt);
  Csv csv(config, "theta_sweep.csv", "h,theta,error_or_DIVERGE");
  for (const auto& c : cells) {
    const std::string e = c.diverged ? std::string("DIVERGE") : num(c.error);
    csv.row(num(c.h), num(c.theta), e);
    fmt::print("h = {:<10} theta = {:<5} {}\n", c.h, c.theta, c.diverged ? e : fmt::format("{:.4e}", c.error));
  }
  csv.write();
  return kSuccess;
}

int cmd_energy(const RunConfig& config) {
  if (int rc = check_hypotheses(config, false)) return rc;
  Run run(config);
  EnergyRecorder recorder(run.space, run.problem.boundary, run.problem.params, run.newmark.dt,
                          config.energy_stride);
  AdvanceOptions opts;
  opts.keep_states = false;
  opts.observer = [&](int step, double, const Vector& d) { recorder.push(step, d); };
  const Trajectory traj = advance(run.problem, run.newmark, opts);
  if (!traj.completed()) {
    fmt::print("diverged at {}\n", traj.message);
    return kDivergence;
  }
  const auto series = recorder.finish();
  Csv csv(config, "energy.csv", "t,E");
  for (const auto& s : series) csv.row(num(s.t), num(s.E));
  csv.write();

  const double T = config.resolved_horizon();
  if (config.fit_t0 >= T) {
    fmt::print("energy series written; fit window starts at {} beyond T = {}, fit skipped\n", config.fit_t0, T);
    return kSuccess;
  }
  const DecayFit fit = decay_fit(series, config.fit_t0, std::min(config.fit_t1, T));
  Csv fit_csv(config, "energy_fit.csv", "t0,t1,A0,A1,r_squared,samples");
  fit_csv.row(num(config.fit_t0), num(std::min(config.fit_t1, T)), num(fit.A0), num(fit.A1), num(fit.r_squared),
              std::to_string(fit.samples));
  fit_csv.write();
  fmt::print("E(t) ~ {:.6e} exp(-{:.6e} t), R^2 = {:.6f}, E reaches 1e-10 near t = {:.1f}\n", fit.A0, fit.A1,
             fit.r_squared, fit.time_to(1e-10));
  return kSuccess;
}

int run_command(const std::string& name, const RunConfig& config) {
  try {
    if (name == "validate") return cmd_validate(config);
    if (name == "solve") return cmd_solve(config);
    if (name == "mms") return cmd_mms(config);
    if (name == "convergence") return cmd_convergence(config);
    if (name == "theta-sweep") return cmd_theta_sweep(config);
    if (name == "energy") return cmd_energy(config);
    fmt::print(stderr, "error: unknown command '{}'\n", name);
    return kConfigError;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::filesystem::filesystem_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kNumericError;
  }
}

}  // namespace mbeam::cli
