#pragma once

/**
 * @file verification.hpp
 * @brief Manufactured solutions, source terms, error norms, convergence and
 *        theta studies, the physical energy and its exponential decay fit.
 */

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbeam/assembly.hpp"
#include "mbeam/geometry.hpp"
#include "mbeam/integrator.hpp"
#include "mbeam/space.hpp"
#include "mbeam/types.hpp"

namespace mbeam {

/// One-dimensional factor of a separable exact solution on [a, b].
struct AxisProfile {
  enum class Kind {
    QuarticBubble,  ///< ((y - a)(y - b))^2
    TrigBubble,     ///< sin^2(m pi (y - a) / (b - a))
  };
  Kind kind = Kind::QuarticBubble;
  double a = -1.0;
  double b = 1.0;
  int mode = 1;

  /// k-th derivative, 0 <= k <= 4.
  double eval(double y, int k) const;
};

enum class TemporalFactor { Cos, Sin, Constant };

/// Which derivative of v: time order 0..2 and per-axis order 0..4.
struct DerivativeSelector {
  int time = 0;
  std::array<int, 2> space{0, 0};
};

/**
 * Separable exact solution v(y, t) = A T(t) P_1(y_1) [P_2(y_2)] with
 * T = cos(2 pi t), sin(2 pi t) or 1. Both bubble profiles vanish with their
 * first derivative at the interval ends, so v is compatible with clamping.
 */
class ManufacturedCase {
 public:
  ManufacturedCase(std::string name, int dim, double amplitude, TemporalFactor temporal,
                   std::array<AxisProfile, 2> profiles);

  /// 0.1 (y^2-1)^2 cos(2 pi t), tensor product in 2D.
  static ManufacturedCase s1(const Box& box);
  /// 1e-3 (y^2-1)^2 sin(2 pi t) in 1D, 1e-7 [(y1^2-1)(y2^2-1)]^2 sin(2 pi t) in 2D.
  static ManufacturedCase s2(const Box& box);
  static ManufacturedCase zero(const Box& box);
  /// "S1", "S2" or "zero".
  static ManufacturedCase by_name(const std::string& name, const Box& box);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  double amplitude() const noexcept { return amplitude_; }

  /// Throws Configuration for time order > 2, axis order > 4, or a second
  /// axis derivative in 1D.
  double eval(std::span<const double> y, double t, DerivativeSelector d = {}) const;
  double laplacian(std::span<const double> y, double t, int time_order = 0) const;
  double bilaplacian(std::span<const double> y, double t) const;
  /// ||grad v(., t)||^2 over the box (16-point Gauss per axis at construction).
  double grad_norm_sq(double t) const;

  /// v(., 0) and v_t(., 0) as Hermite data.
  HermiteDatum initial_displacement() const;
  HermiteDatum initial_velocity() const;
  /// Hermite data of v(., t) (time_order 1: v_t).
  HermiteDatum datum(double t, int time_order = 0) const;

 private:
  double temporal(double t, int k) const;

  std::string name_;
  int dim_;
  double amplitude_;
  TemporalFactor temporal_;
  std::array<AxisProfile, 2> profiles_;
  double grad_constant_ = 0.0;
};

/**
 * ConsistentWeakForm is the strong form obtained by integrating the discrete
 * weak form by parts:
 *
 *   f = v_tt - b1 ||grad v||^2 lap v + b2 lap^2 v + nu v_t
 *       - sum_i d_i(a1_i d_i v) + sum_ij d_j(a2_ij d_i v) + a4 . grad v_t + a5 . grad v
 *
 * TransformedPde is the pulled-back equation written term by term:
 *
 *   f = v_tt - b1 ||grad v||^2 lap v + b2 lap^2 v + nu v_t
 *       + a2_ij d_ij v - a1_i d_ii v - a3_i d_i v - a4_i d_i v_t
 *
 * The two differ by first-order terms proportional to K'. Only the first is
 * reproduced exactly by the Galerkin scheme.
 */
enum class SourceForm { ConsistentWeakForm, TransformedPde };

/// Spatial operator applied to v, everything except v_tt.
double strong_operator(const ManufacturedCase& v, const BoundaryState& state,
                       const BeamParameters& params, std::span<const double> y, double t,
                       SourceForm form = SourceForm::ConsistentWeakForm);

double manufactured_source(const ManufacturedCase& v, const MovingBoundary& boundary,
                           const BeamParameters& params, std::span<const double> y, double t,
                           SourceForm form = SourceForm::ConsistentWeakForm);

SourceFunction make_source(const ManufacturedCase& v, const MovingBoundary& boundary,
                           const BeamParameters& params,
                           SourceForm form = SourceForm::ConsistentWeakForm);

struct ConsistencyResult {
  double weak = 0.0;      ///< w_h^T (L1 v_t,h + (G K1 + L2) v_h)
  double strong = 0.0;    ///< (strong operator of v, w)
  double residual = 0.0;  ///< |weak - strong|
};

/**
 * Applies the assembled spatial operators to the interpolants of v and w at
 * time t and compares with the quadrature of (strong operator of v) * w.
 */
ConsistencyResult weak_strong_consistency_check(const Assembler& assembler,
                                                const MovingBoundary& boundary,
                                                const BeamParameters& params, double t,
                                                const ManufacturedCase& v,
                                                const ManufacturedCase& w,
                                                SourceForm form = SourceForm::ConsistentWeakForm);

/// How the discrete field is read for error norms.
enum class Reconstruction {
  Hermite,      ///< the finite element function itself
  NodalLinear,  ///< piecewise (bi)linear through the nodal values only
};

struct ErrorNormOptions {
  int quadrature_points = 6;
  Reconstruction reconstruction = Reconstruction::Hermite;
};

struct ErrorReport {
  bool diverged = false;
  int diverged_step = -1;
  double linf_l2 = 0.0;  ///< max over steps of ||v_h - v||_L2
  double linf_h2 = 0.0;  ///< max over steps of ||lap (v_h - v)||_L2 (Hermite only)
  std::vector<double> times;
  std::vector<double> l2;
  std::vector<double> h2;
};

/// Spatial errors of one state against v(., t).
std::pair<double, double> state_errors(const HermiteSpace& space, const Vector& d,
                                       const ManufacturedCase& v, double t,
                                       const ErrorNormOptions& options = {});

/// Errors at every stored state. A diverged trajectory gives a report with
/// the divergence marker and no norms.
ErrorReport error_norms(const Trajectory& trajectory, const ManufacturedCase& v,
                        const HermiteSpace& space, const ErrorNormOptions& options = {});

/// Everything a manufactured-solution run needs apart from the mesh and dt.
struct StudySetup {
  Box box = Box::symmetric(1);
  ManufacturedCase exact = ManufacturedCase::s1(Box::symmetric(1));
  MovingBoundary boundary = MovingBoundary::b1(1);
  BeamParameters params{};
  double horizon = 1.0;
  NewmarkConfig newmark{};  ///< dt and steps are overwritten per level
  SourceForm source_form = SourceForm::ConsistentWeakForm;
  InitialDataMode initial_data = InitialDataMode::NodalInterpolation;
  AssemblyOptions assembly{};
  ErrorNormOptions norms{};
};

struct LevelResult {
  int cells = 0;
  double h = 0.0;
  double dt = 0.0;
  int steps = 0;
  ErrorReport report;
  std::optional<ErrorReport> nodal_linear;  ///< filled when requested
};

/// Number of cells for mesh size h on an axis of length L. Throws
/// Configuration unless L / h is an integer.
int cells_for(double length, double h);
/// Steps for dt over the horizon. Throws Configuration unless T / dt is an integer.
int steps_for(double horizon, double dt);

LevelResult run_level(const StudySetup& setup, int cells, double dt, bool with_nodal_linear = false);

enum class StudyMode { FixHVaryDt, FixDtVaryH, CoupledHEq2Dt };

struct ConvergenceRow {
  int level = 0;
  double h = 0.0;
  double dt = 0.0;
  bool diverged = false;
  double error = 0.0;
  std::optional<double> rate;  ///< log2(e_{i-1} / e_i); empty on the first row
  std::optional<double> nodal_linear_error;
};

struct ConvergenceTable {
  StudyMode mode = StudyMode::CoupledHEq2Dt;
  std::vector<ConvergenceRow> rows;
};

/// Fills `rate` from consecutive rows; a row next to a diverged one gets none.
void fill_rates(ConvergenceTable& table);

struct StudyPlan {
  StudyMode mode = StudyMode::CoupledHEq2Dt;
  int first_level = 1;
  int levels = 6;
  double fixed_h = 1.0 / 64.0;   ///< FixHVaryDt
  double fixed_dt = 1.0 / 128.0; ///< FixDtVaryH
  bool nodal_linear = false;
};

/**
 * Level i uses
 *   FixHVaryDt:     h fixed,      dt = 2^-(i+1)
 *   FixDtVaryH:     h = 2^-i,     dt fixed
 *   CoupledHEq2Dt:  dt = 2^-(i+1), h = 2 dt
 */
ConvergenceTable convergence_study(const StudySetup& setup, const StudyPlan& plan);

struct ThetaCell {
  double h = 0.0;
  double theta = 0.0;
  bool diverged = false;
  double error = 0.0;
  std::optional<double> nodal_linear_error;
};

/// Cells in (h, theta) order.
std::vector<ThetaCell> theta_sweep(const StudySetup& setup, std::span<const double> h_list,
                                   std::span<const double> theta_list, double dt,
                                   bool nodal_linear = false);

/**
 * E = 1/2 int_box [ (v' - (K'/K) y . grad v)^2 + K^-4 (lap v)^2 + zeta0 K^-2 |grad v|^2
 *                   + zeta1/2 K^-4 |grad v|^4 ] K^n dy
 * for the state d with time derivative coefficients `velocity`.
 */
double energy(const HermiteSpace& space, const Vector& d, const Vector& velocity,
              const MovingBoundary& boundary, const BeamParameters& params, double t,
              int quadrature_points = 6);

struct EnergySample {
  double t = 0.0;
  double E = 0.0;
};

/**
 * Energy along a run from a stream of states. Velocities are central
 * differences; the first and last states use one-sided second-order
 * differences. Needs at least three states.
 */
class EnergyRecorder {
 public:
  EnergyRecorder(const HermiteSpace& space, MovingBoundary boundary, BeamParameters params, double dt,
                 int stride = 1);

  void push(int step, const Vector& d);
  std::vector<EnergySample> finish();

 private:
  void emit(int step, const Vector& d, const Vector& velocity);

  const HermiteSpace* space_;
  MovingBoundary boundary_;
  BeamParameters params_;
  double dt_;
  int stride_;
  std::vector<std::pair<int, Vector>> window_;  ///< last three states
  bool started_ = false;
  std::vector<EnergySample> samples_;
};

std::vector<EnergySample> energy_series(const Trajectory& trajectory, const HermiteSpace& space,
                                        const MovingBoundary& boundary,
                                        const BeamParameters& params, int stride = 1);

struct DecayFit {
  double A0 = 0.0;
  double A1 = 0.0;
  double r_squared = 0.0;
  int samples = 0;

  /// Time at which A0 exp(-A1 t) reaches `level`; infinite when A1 <= 0.
  double time_to(double level) const;
};

/// Least-squares line through (t, log E) for samples with t in [t0, t1].
/// Throws FitDomain on non-positive energies or fewer than two samples.
DecayFit decay_fit(std::span<const EnergySample> series, double t0, double t1);

}  // namespace mbeam
