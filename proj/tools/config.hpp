#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <mbeam/assembly.hpp>
#include <mbeam/geometry.hpp>
#include <mbeam/integrator.hpp>
#include <mbeam/verification.hpp>

namespace mbeam::cli {

/**
 * Flat key/value run description. Every key is optional; unset keys take the
 * defaults below. Mesh size is given by `h` or `cells`, the horizon by `T` or
 * `steps`; giving both of a pair requires them to agree.
 */
struct RunConfig {
  int dimension = 1;
  double box_lo = -1.0;
  double box_hi = 1.0;
  std::string exact = "S1";        ///< S1, S2 or zero
  bool homogeneous = false;        ///< drop the manufactured source
  std::string boundary = "B1";     ///< B1, B2, constant, linear, exponential
  double boundary_base = 64.0;
  double boundary_slope = 0.0;     ///< linear slope or exponential amplitude
  double boundary_rate = 1.0;      ///< exponential rate
  double zeta0 = 128.0;
  double zeta1 = 2.0;
  double nu = 1.0;
  double theta = 0.25;
  std::optional<double> h;
  std::optional<int> cells;
  double dt = 1.0 / 128.0;
  std::optional<double> T;
  std::optional<int> steps;
  bool relaxed = false;
  std::string g_gradient = "exact";        ///< exact, legacy
  std::string damping_level = "staggered"; ///< staggered, centered
  std::string g_norm = "gradient";         ///< gradient, l2
  std::string source_form = "consistent";  ///< consistent, transformed
  std::string initial_data = "interpolation";  ///< interpolation, projection
  double newton_tol = 1e-14;
  int newton_max_iter = 50;
  double divergence_threshold = 1e8;
  int operator_points = 5;
  int load_points = 6;
  int norm_points = 6;
  std::string norm = "hermite";  ///< hermite, nodal_linear

  // studies
  std::string study_mode = "coupled";  ///< coupled, fix_h, fix_dt
  int first_level = 1;
  int levels = 6;
  std::vector<double> h_list{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::vector<double> theta_list{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> snapshots;  ///< empty: final time only
  double fit_t0 = 1.0;
  double fit_t1 = 20.0;
  int energy_stride = 1;

  std::string out = "out";

  Box box() const;
  int resolved_cells() const;
  double resolved_horizon() const;
  int resolved_steps() const;
  MovingBoundary make_boundary() const;
  BeamParameters make_params() const;
  NewmarkConfig make_newmark() const;
  AssemblyOptions make_assembly() const;
  StudySetup make_study() const;
};

/// Reads a flat YAML mapping and applies `key=value` overrides (values are
/// YAML scalars or flow sequences). Throws Error(Configuration) naming the
/// line or the flag on unknown keys, malformed values or invariant violations.
RunConfig parse_config(const std::optional<std::string>& path,
                       const std::vector<std::string>& overrides = {});
RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides = {});

/// Throws Error(Configuration) naming the offending field.
void check_invariants(const RunConfig& c);

}  // namespace mbeam::cli
