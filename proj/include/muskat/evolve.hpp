#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "muskat/dynamics.hpp"
#include "muskat/spline.hpp"

namespace muskat {

// Embedded-pair step control settings (DOPRI5(4)).
struct StepController {
  double rtol = 1e-8;
  double atol = 1e-10;
  double dt_init = 1e-6;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  double safety = 0.9;
  int max_rejects_per_step = 20;

  void validate() const;
};

enum class Termination {
  reached_t_end,
  turnover_detected,
  step_collapse,
  arc_chord_failure,
  quadrature_failure,
};
const char* to_string(Termination t);

struct StepRecord {
  double t = 0.0;        // time at the start of the attempt
  double dt = 0.0;
  double err_est = 0.0;
  bool accepted = false;
  int n_nodes = 0;
  double min_slope = 0.0;  // contour problems only; 0 otherwise
};

template <typename StateT>
struct Trajectory {
  std::vector<std::pair<double, StateT>> snapshots;
  std::vector<StepRecord> telemetry;
  Termination termination = Termination::reached_t_end;
  std::string termination_detail;
  double t_final = 0.0;

  int accepted_steps() const {
    int k = 0;
    for (const auto& r : telemetry) k += r.accepted ? 1 : 0;
    return k;
  }
};

using RhsFn = std::function<std::vector<double>(double, const std::vector<double>&)>;

// One 7-stage Dormand-Prince 5(4) evaluation: fifth- and fourth-order results.
struct Dopri54Pair {
  std::vector<double> y5;
  std::vector<double> y4;
};
Dopri54Pair dopri54_apply(const RhsFn& rhs, const std::vector<double>& y, double t,
                          double dt);

// Single controlled step attempt. err_est is the mixed-norm error of the
// embedded pair; dt_next is the controller's proposal for the next attempt.
struct StepOutcome {
  std::vector<double> y;
  double t_new = 0.0;
  double dt_next = 0.0;
  bool accepted = false;
  double err_est = 0.0;
};
StepOutcome dopri54_step(const RhsFn& rhs, const std::vector<double>& y, double t,
                         double dt, const StepController& ctrl);

// C^2 periodic interpolant of the field samples.
PeriodicSpline spline_periodic(const PeriodicField& values);

// Mean of the interpolant over one period.
double field_mean(const PeriodicField& f);

// Node redistribution: equidistributes ds = sqrt(1 + f'^2) (1 + c_k |kappa|)
// along the graph, resampling values through the periodic spline. Node count
// grows by growth_factor when the monitor peak exceeds growth_threshold times
// its median (capped at max_nodes).
struct RedistributeOptions {
  bool enabled = true;
  double curvature_weight = 1.0;
  double growth_factor = 1.5;
  double growth_threshold = 10.0;  // per-interval monitor mass vs grid average
  int max_nodes = 2048;
};
GraphInterface redistribute(const GraphInterface& g, const RedistributeOptions& opt);
TwoPhaseState redistribute(const TwoPhaseState& s, const RedistributeOptions& opt);

// ---- Problem integration ----

struct IntegrateOptions {
  RedistributeOptions redistribute;   // graph problems
  bool stop_on_turnover = false;      // contour problems
  bool backward = false;              // negate the RHS (short-horizon runs)
  double near_touch_warning = 1e-3;   // two-phase separation warning level
};

template <typename StateT>
using SnapshotHook = std::function<void(double, const StateT&)>;

Trajectory<TwoPhaseState> integrate_two_phase(
    const TwoPhaseState& initial, const StepController& ctrl, const QuadratureSpec& spec,
    const std::vector<double>& snapshot_times, const IntegrateOptions& opt = {},
    const SnapshotHook<TwoPhaseState>& hook = {});

Trajectory<GraphInterface> integrate_single_graph(
    const GraphInterface& initial, double rho_bar, const StepController& ctrl,
    const QuadratureSpec& spec, const std::vector<double>& snapshot_times,
    const IntegrateOptions& opt = {}, const SnapshotHook<GraphInterface>& hook = {});

Trajectory<RealLineGraph> integrate_realline(
    const RealLineGraph& initial, double delta_rho, const StepController& ctrl,
    const QuadratureSpec& spec, const std::vector<double>& snapshot_times,
    const IntegrateOptions& opt = {}, const SnapshotHook<RealLineGraph>& hook = {});

Trajectory<Curve> integrate_contour(
    const Curve& initial, const StepController& ctrl, const QuadratureSpec& spec,
    const std::vector<double>& snapshot_times, const IntegrateOptions& opt = {},
    const SnapshotHook<Curve>& hook = {});

// ---- Spectral Galerkin backend ----

// Spectra of z1 - a and z2, truncated to modes |k| <= n_modes.
struct GalerkinSpectra {
  Spectrum z1ma;
  Spectrum z2;
  int n_modes = 0;
};

Spectrum project_modes(const Spectrum& s, int n_modes);

// Projection of the contour velocity: evaluates the kernel on a uniform grid
// of size grid_n (requires grid_n >= 4 n_modes), transforms and truncates.
GalerkinSpectra galerkin_rhs(const GalerkinSpectra& state, int grid_n,
                             double delta_rho, const QuadratureSpec& spec);

GalerkinSpectra galerkin_project_curve(const Curve& curve, int n_modes);
Curve galerkin_synthesize(const GalerkinSpectra& state, int grid_n, double delta_rho);

Trajectory<GalerkinSpectra> integrate_galerkin(
    const GalerkinSpectra& initial, int grid_n, double delta_rho,
    const StepController& ctrl, const QuadratureSpec& spec,
    const std::vector<double>& snapshot_times, const IntegrateOptions& opt = {});

}  // namespace muskat
