#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <mbeam/error.hpp>

namespace mbeam::cli {

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Configuration, fmt::format("{}: {}", where, what));
}

std::optional<double> plain_number(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

/// Decimal, "p/q" or "b^e" (e.g. 1/128, 2^-7).
double parse_number(const std::string& text, const std::string& where) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s.push_back(c);
  }
  if (auto v = plain_number(s)) return *v;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const auto p = plain_number(std::string_view(s).substr(0, slash));
    const auto q = plain_number(std::string_view(s).substr(slash + 1));
    if (p && q && *q != 0.0) return *p / *q;
  }
  if (const auto caret = s.find('^'); caret != std::string::npos) {
    const auto b = plain_number(std::string_view(s).substr(0, caret));
    const auto e = plain_number(std::string_view(s).substr(caret + 1));
    if (b && e) return std::pow(*b, *e);
  }
  config_error(where, fmt::format("'{}' is not a number", text));
}

double as_double(const YAML::Node& n, const std::string& where) {
  if (!n.IsScalar()) config_error(where, "expected a number");
  const double v = parse_number(n.Scalar(), where);
  if (!std::isfinite(v)) config_error(where, fmt::format("'{}' is not finite", n.Scalar()));
  return v;
}

int as_int(const YAML::Node& n, const std::string& where) {
  const double v = as_double(n, where);
  if (v != std::floor(v) || std::abs(v) > 1e9) config_error(where, fmt::format("'{}' is not an integer", n.Scalar()));
  return static_cast<int>(v);
}

bool as_bool(const YAML::Node& n, const std::string& where) {
  if (!n.IsScalar()) config_error(where, "expected true or false");
  const std::string& s = n.Scalar();
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  config_error(where, fmt::format("'{}' is not a boolean", s));
}

std::string as_choice(const YAML::Node& n, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!n.IsScalar()) config_error(where, "expected a string");
  for (const char* a : allowed) {
    if (n.Scalar() == a) return n.Scalar();
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  config_error(where, fmt::format("'{}' is not one of {}", n.Scalar(), list));
}

std::vector<double> as_list(const YAML::Node& n, const std::string& where) {
  std::vector<double> out;
  if (n.IsScalar()) {
    // "0, 0.25, 0.5" on one line
    std::stringstream ss(n.Scalar());
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.find_first_not_of(' ') != std::string::npos) out.push_back(parse_number(item, where));
    }
    return out;
  }
  if (!n.IsSequence()) config_error(where, "expected a list of numbers");
  for (const auto& item : n) out.push_back(as_double(item, where));
  return out;
}

using Setter = std::function<void(RunConfig&, const YAML::Node&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"dimension", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.dimension = as_int(n, w); }},
      {"box_lo", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.box_lo = as_double(n, w); }},
      {"box_hi", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.box_hi = as_double(n, w); }},
      {"case", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.exact = as_choice(n, w, {"S1", "S2", "zero"}); }},
      {"homogeneous", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.homogeneous = as_bool(n, w); }},
      {"boundary", [](RunConfig& c, const YAML::Node& n, const std::string& w) {
         c.boundary = as_choice(n, w, {"B1", "B2", "constant", "linear", "exponential"});
       }},
      {"boundary_base", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.boundary_base = as_double(n, w); }},
      {"boundary_slope", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.boundary_slope = as_double(n, w); }},
      {"boundary_rate", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.boundary_rate = as_double(n, w); }},
      {"zeta0", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.zeta0 = as_double(n, w); }},
      {"zeta1", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.zeta1 = as_double(n, w); }},
      {"nu", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.nu = as_double(n, w); }},
      {"theta", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.theta = as_double(n, w); }},
      {"h", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.h = as_double(n, w); }},
      {"cells", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.cells = as_int(n, w); }},
      {"dt", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.dt = as_double(n, w); }},
      {"T", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.T = as_double(n, w); }},
      {"steps", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.steps = as_int(n, w); }},
      {"relaxed", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.relaxed = as_bool(n, w); }},
      {"g_gradient", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.g_gradient = as_choice(n, w, {"exact", "legacy"}); }},
      {"damping_level", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.damping_level = as_choice(n, w, {"staggered", "centered"}); }},
      {"g_norm", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.g_norm = as_choice(n, w, {"gradient", "l2"}); }},
      {"source_form", [](RunConfig& c, const YAML::Node& n, const std::string& w) {
         c.source_form = as_choice(n, w, {"consistent", "transformed"});
       }},
      {"initial_data", [](RunConfig& c, const YAML::Node& n, const std::string& w) {
         c.initial_data = as_choice(n, w, {"interpolation", "projection"});
       }},
      {"newton_tol", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.newton_tol = as_double(n, w); }},
      {"newton_max_iter", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.newton_max_iter = as_int(n, w); }},
      {"divergence_threshold", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.divergence_threshold = as_double(n, w); }},
      {"operator_points", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.operator_points = as_int(n, w); }},
      {"load_points", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.load_points = as_int(n, w); }},
      {"norm_points", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.norm_points = as_int(n, w); }},
      {"norm", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.norm = as_choice(n, w, {"hermite", "nodal_linear"}); }},
      {"study_mode", [](RunConfig& c, const YAML::Node& n, const std::string& w) {
         c.study_mode = as_choice(n, w, {"coupled", "fix_h", "fix_dt"});
       }},
      {"first_level", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.first_level = as_int(n, w); }},
      {"levels", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.levels = as_int(n, w); }},
      {"h_list", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.h_list = as_list(n, w); }},
      {"theta_list", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.theta_list = as_list(n, w); }},
      {"snapshots", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.snapshots = as_list(n, w); }},
      {"fit_t0", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.fit_t0 = as_double(n, w); }},
      {"fit_t1", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.fit_t1 = as_double(n, w); }},
      {"energy_stride", [](RunConfig& c, const YAML::Node& n, const std::string& w) { c.energy_stride = as_int(n, w); }},
      {"out", [](RunConfig& c, const YAML::Node& n, const std::string& w) {
         if (!n.IsScalar()) config_error(w, "expected a path");
         c.out = n.Scalar();
       }},
  };
  return table;
}

void apply(RunConfig& c, const std::string& key, const YAML::Node& value, const std::string& where) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) config_error(where, fmt::format("unknown key '{}'", key));
  if (value.IsNull()) config_error(where, fmt::format("'{}' has no value", key));
  it->second(c, value, where);
}

void apply_document(RunConfig& c, const YAML::Node& root, const std::string& source) {
  if (!root || root.IsNull()) return;
  if (!root.IsMap()) config_error(source, "top level must be a key: value mapping");
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    apply(c, key, kv.second, fmt::format("{} line {}", source, kv.first.Mark().line + 1));
  }
}

void apply_overrides(RunConfig& c, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const std::string where = fmt::format("--set {}", o);
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0) config_error(where, "expected key=value");
    YAML::Node value;
    try {
      value = YAML::Load(o.substr(eq + 1));
    } catch (const YAML::Exception& e) {
      config_error(where, e.msg);
    }
    apply(c, o.substr(0, eq), value, where);
  }
}

RunConfig finish(RunConfig c) {
  check_invariants(c);
  return c;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
  RunConfig c;
  try {
    apply_document(c, YAML::Load(text), "config");
  } catch (const YAML::Exception& e) {
    config_error(fmt::format("config line {}", e.mark.line + 1), e.msg);
  }
  apply_overrides(c, overrides);
  return finish(std::move(c));
}

RunConfig parse_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  RunConfig c;
  if (path) {
    std::ifstream in(*path);
    if (!in) config_error(*path, "cannot open file");
    try {
      apply_document(c, YAML::Load(in), *path);
    } catch (const YAML::Exception& e) {
      config_error(fmt::format("{} line {}", *path, e.mark.line + 1), e.msg);
    }
  }
  apply_overrides(c, overrides);
  return finish(std::move(c));
}

void check_invariants(const RunConfig& c) {
  auto need = [](bool ok, const char* field, const std::string& what) {
    if (!ok) config_error(field, what);
  };
  need(c.dimension == 1 || c.dimension == 2, "dimension", "must be 1 or 2");
  need(c.box_hi > c.box_lo, "box_hi", "must exceed box_lo");
  need(c.theta >= 0.0 && c.theta <= 1.0, "theta", fmt::format("{} is outside [0, 1]", c.theta));
  need(c.dt > 0.0, "dt", fmt::format("{} must be positive", c.dt));
  need(!c.h || *c.h > 0.0, "h", "must be positive");
  need(!c.cells || *c.cells >= 1, "cells", "must be at least 1");
  need(!c.T || *c.T > 0.0, "T", "must be positive");
  need(!c.steps || *c.steps >= 1, "steps", "must be at least 1");
  need(c.zeta0 >= 0.0, "zeta0", "must be nonnegative");
  need(c.zeta1 >= 0.0, "zeta1", "must be nonnegative");
  need(c.nu >= 0.0, "nu", "must be nonnegative");
  need(c.boundary_base > 0.0, "boundary_base", "must be positive");
  need(c.newton_tol > 0.0, "newton_tol", "must be positive");
  need(c.newton_max_iter >= 1, "newton_max_iter", "must be at least 1");
  need(c.divergence_threshold > 0.0, "divergence_threshold", "must be positive");
  need(c.operator_points >= 4 && c.operator_points <= 64, "operator_points", "must be within 4..64");
  need(c.load_points >= 1 && c.load_points <= 64, "load_points", "must be within 1..64");
  need(c.norm_points >= 1 && c.norm_points <= 64, "norm_points", "must be within 1..64");
  need(c.levels >= 2, "levels", "must be at least 2");
  need(c.first_level >= 0, "first_level", "must be nonnegative");
  need(c.energy_stride >= 1, "energy_stride", "must be at least 1");
  need(c.fit_t1 > c.fit_t0, "fit_t1", "must exceed fit_t0");
  for (double t : c.theta_list) need(t >= 0.0 && t <= 1.0, "theta_list", fmt::format("{} is outside [0, 1]", t));
  for (double h : c.h_list) need(h > 0.0, "h_list", "entries must be positive");
  for (double t : c.snapshots) need(t >= 0.0, "snapshots", "times must be nonnegative");
  // Cross-field consistency; resolved_* throw with the field name.
  (void)c.resolved_cells();
  (void)c.resolved_steps();
}

Box RunConfig::box() const {
  Box b;
  b.dim = dimension;
  for (int i = 0; i < dimension; ++i) b.axes[i] = {box_lo, box_hi};
  return b;
}

int RunConfig::resolved_cells() const {
  const double length = box_hi - box_lo;
  if (h && cells) {
    if (std::abs(length / *cells - *h) > 1e-12 * length) {
      config_error("cells", fmt::format("h = {} and cells = {} disagree on a box of length {}", *h, *cells, length));
    }
    return *cells;
  }
  if (cells) return *cells;
  try {
    return cells_for(length, h.value_or(1.0 / 64.0));
  } catch (const Error& e) {
    config_error("h", e.what());
  }
}

double RunConfig::resolved_horizon() const {
  if (T) return *T;
  if (steps) return *steps * dt;
  return 1.0;
}

int RunConfig::resolved_steps() const {
  if (T && steps) {
    if (std::abs(*steps * dt - *T) > 1e-9 * *T) {
      config_error("steps", fmt::format("T = {} and steps = {} disagree for dt = {}", *T, *steps, dt));
    }
    return *steps;
  }
  if (steps) return *steps;
  try {
    return steps_for(resolved_horizon(), dt);
  } catch (const Error& e) {
    config_error("T", e.what());
  }
}

MovingBoundary RunConfig::make_boundary() const {
  if (boundary == "B1") return MovingBoundary::b1(dimension);
  if (boundary == "B2") return MovingBoundary::b2(dimension);
  if (boundary == "constant") return MovingBoundary::constant(boundary_base);
  if (boundary == "linear") return MovingBoundary::linear_drift(boundary_base, boundary_slope);
  return MovingBoundary::exponential_saturation(boundary_base, boundary_slope, boundary_rate);
}

BeamParameters RunConfig::make_params() const {
  BeamParameters p;
  p.zeta0 = zeta0;
  p.zeta1 = zeta1;
  p.nu = nu;
  return p;
}

NewmarkConfig RunConfig::make_newmark() const {
  NewmarkConfig n;
  n.theta = theta;
  n.dt = dt;
  n.steps = resolved_steps();
  n.newton_tol_step = newton_tol;
  n.newton_tol_resid = newton_tol;
  n.newton_max_iter = newton_max_iter;
  n.divergence_threshold = divergence_threshold;
  n.gradient_mode = g_gradient == "legacy" ? GradientMode::LegacyDiagonal : GradientMode::Exact;
  n.damping_level = damping_level == "centered" ? DampingLevel::Centered : DampingLevel::Staggered;
  n.nonlinear_norm = g_norm == "l2" ? NonlinearNorm::L2 : NonlinearNorm::GradientSeminorm;
  return n;
}

AssemblyOptions RunConfig::make_assembly() const { return {operator_points, load_points}; }

StudySetup RunConfig::make_study() const {
  StudySetup s;
  s.box = box();
  s.exact = ManufacturedCase::by_name(exact, s.box);
  s.boundary = make_boundary();
  s.params = make_params();
  s.horizon = resolved_horizon();
  s.newmark = make_newmark();
  s.source_form = source_form == "transformed" ? SourceForm::TransformedPde : SourceForm::ConsistentWeakForm;
  s.initial_data = initial_data == "projection" ? InitialDataMode::L2Projection : InitialDataMode::NodalInterpolation;
  s.assembly = make_assembly();
  s.norms.quadrature_points = norm_points;
  s.norms.reconstruction = norm == "nodal_linear" ? Reconstruction::NodalLinear : Reconstruction::Hermite;
  return s;
}

}  // namespace mbeam::cli
