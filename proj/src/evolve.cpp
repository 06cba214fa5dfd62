#include "muskat/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "muskat/errors.hpp"

namespace muskat {

void StepController::validate() const {
  if (!(0.0 < dt_min && dt_min < dt_init && dt_init <= dt_max)) {
    throw Error("step controller requires 0 < dt_min < dt_init <= dt_max");
  }
  if (!(safety > 0.0 && safety < 1.0)) throw Error("safety must lie in (0, 1)");
  if (!(rtol > 0.0 && atol > 0.0)) throw Error("tolerances must be positive");
  if (max_rejects_per_step < 1) throw Error("max_rejects_per_step must be >= 1");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::turnover_detected: return "turnover_detected";
    case Termination::step_collapse: return "step_collapse";
    case Termination::arc_chord_failure: return "arc_chord_failure";
    case Termination::quadrature_failure: return "quadrature_failure";
  }
  return "unknown";
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,     0.0,       500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,     0.0,          7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

Dopri54Pair dopri54_apply(const RhsFn& rhs, const std::vector<double>& y, double t,
                          double dt) {
  const std::size_t n = y.size();
  std::vector<std::vector<double>> k(7);
  std::vector<double> stage(n);
  for (int s = 0; s < 7; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = y[i];
      for (int j = 0; j < s; ++j) acc += dt * kA[s][j] * k[static_cast<std::size_t>(j)][i];
      stage[i] = acc;
    }
    k[static_cast<std::size_t>(s)] = rhs(t + kC[s] * dt, stage);
  }
  Dopri54Pair out;
  out.y5.resize(n);
  out.y4.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double a5 = y[i], a4 = y[i];
    for (int s = 0; s < 7; ++s) {
      a5 += dt * kB5[s] * k[static_cast<std::size_t>(s)][i];
      a4 += dt * kB4[s] * k[static_cast<std::size_t>(s)][i];
    }
    out.y5[i] = a5;
    out.y4[i] = a4;
  }
  return out;
}

StepOutcome dopri54_step(const RhsFn& rhs, const std::vector<double>& y, double t,
                         double dt, const StepController& ctrl) {
  Dopri54Pair pair = dopri54_apply(rhs, y, t, dt);
  double err = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!std::isfinite(pair.y5[i])) {
      finite = false;
      break;
    }
    const double scale =
        ctrl.atol + ctrl.rtol * std::max(std::fabs(y[i]), std::fabs(pair.y5[i]));
    err = std::max(err, std::fabs(pair.y5[i] - pair.y4[i]) / scale);
  }
  StepOutcome out;
  out.err_est = finite ? err : std::numeric_limits<double>::infinity();
  out.accepted = finite && err <= 1.0;
  double factor;
  if (!finite) {
    factor = 0.2;
  } else {
    factor = ctrl.safety * std::pow(std::max(err, 1e-30), -0.2);
    factor = std::clamp(factor, 0.2, 5.0);
    if (!out.accepted) factor = std::min(factor, 1.0);
  }
  out.dt_next = std::clamp(dt * factor, ctrl.dt_min, ctrl.dt_max);
  if (out.accepted) {
    out.y = std::move(pair.y5);
    out.t_new = t + dt;
  } else {
    out.y = y;
    out.t_new = t;
  }
  return out;
}

PeriodicSpline spline_periodic(const PeriodicField& values) {
  return PeriodicSpline(values.grid(), values.values());
}

namespace {

// The continuous two-interface system conserves the interface means exactly;
// the discrete grid-mean of the assembled rhs carries sampling error when a
// sharp feature is marginally resolved. Projecting that mean out keeps the
// invariant exact along trajectories without touching the operator itself.
void project_out_mean(const PeriodicGrid& grid, std::vector<double>& rhs_values) {
  PeriodicSpline s(grid, rhs_values);
  const double mean = s.period_integral() / kTwoPi;
  for (double& v : rhs_values) v -= mean;
}

}  // namespace

double field_mean(const PeriodicField& f) {
  return PeriodicSpline(f.grid(), f.values()).period_integral() / kTwoPi;
}

namespace {

struct MonitorSamples {
  std::vector<double> x;  // fine sample points, [-pi, pi] inclusive
  std::vector<double> m;  // monitor values
};

MonitorSamples sample_monitor(const std::vector<const PeriodicSpline*>& splines,
                              double curvature_weight, int fine_n) {
  MonitorSamples out;
  out.x.resize(static_cast<std::size_t>(fine_n + 1));
  out.m.assign(static_cast<std::size_t>(fine_n + 1), 0.0);
  for (int i = 0; i <= fine_n; ++i) {
    const double x = -kPi + kTwoPi * i / fine_n;
    out.x[static_cast<std::size_t>(i)] = x;
    double total = 0.0;
    for (const PeriodicSpline* s : splines) {
      double v, dv, d2v;
      s->eval_all(x, v, dv, d2v);
      const double slope2 = 1.0 + dv * dv;
      const double kappa = std::fabs(d2v) / std::pow(slope2, 1.5);
      const double m = std::sqrt(slope2) * (1.0 + curvature_weight * kappa);
      if (!std::isfinite(m)) throw Error("redistribution monitor is not finite");
      total += m;
    }
    out.m[static_cast<std::size_t>(i)] = total;
  }
  return out;
}

PeriodicGrid equidistributed_grid(const MonitorSamples& mon, int n_new) {
  const std::size_t fine = mon.x.size();
  std::vector<double> cum(fine, 0.0);
  for (std::size_t i = 1; i < fine; ++i) {
    cum[i] = cum[i - 1] +
             0.5 * (mon.m[i] + mon.m[i - 1]) * (mon.x[i] - mon.x[i - 1]);
  }
  const double total = cum.back();
  std::vector<double> nodes(static_cast<std::size_t>(n_new));
  std::size_t seg = 0;
  for (int j = 0; j < n_new; ++j) {
    const double target = total * j / n_new;
    while (seg + 1 < fine - 1 && cum[seg + 1] < target) ++seg;
    const double dc = cum[seg + 1] - cum[seg];
    const double frac = dc > 0.0 ? (target - cum[seg]) / dc : 0.0;
    nodes[static_cast<std::size_t>(j)] =
        mon.x[seg] + frac * (mon.x[seg + 1] - mon.x[seg]);
  }
  // Snap to the exact uniform grid when the monitor was flat.
  bool uniform = true;
  for (int j = 0; j < n_new; ++j) {
    if (std::fabs(nodes[static_cast<std::size_t>(j)] - (-kPi + kTwoPi * j / n_new)) >
        1e-12) {
      uniform = false;
      break;
    }
  }
  if (uniform) return PeriodicGrid::uniform(n_new);
  return PeriodicGrid(std::move(nodes));
}

// Growth triggers when some interval of the current grid carries much more
// monitor mass than the per-node average; an equidistributed grid resets the
// ratio to one, so growth recurs only while the solution keeps sharpening.
int grown_count(const MonitorSamples& mon, const PeriodicGrid& grid,
                const RedistributeOptions& opt) {
  const std::size_t fine = mon.x.size();
  std::vector<double> cum(fine, 0.0);
  for (std::size_t i = 1; i < fine; ++i) {
    cum[i] = cum[i - 1] + 0.5 * (mon.m[i] + mon.m[i - 1]) * (mon.x[i] - mon.x[i - 1]);
  }
  const double total = cum.back();
  const int n = grid.n();
  const auto mass_at = [&](double x) {
    auto it = std::upper_bound(mon.x.begin(), mon.x.end(), x);
    std::size_t j = static_cast<std::size_t>(it - mon.x.begin());
    if (j == 0) return 0.0;
    if (j >= fine) return total;
    const double frac = (x - mon.x[j - 1]) / (mon.x[j] - mon.x[j - 1]);
    return cum[j - 1] + frac * (cum[j] - cum[j - 1]);
  };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = grid.alpha(i);
    const double b = (i + 1 < n) ? grid.alpha(i + 1) : kPi;
    worst = std::max(worst, mass_at(b) - mass_at(a));
  }
  if (worst * n > opt.growth_threshold * total) {
    int n_new = static_cast<int>(std::ceil(opt.growth_factor * n));
    n_new += n_new % 2;  // keep even for the spectral paths
    return std::min(n_new, opt.max_nodes);
  }
  return n;
}

std::vector<double> resample(const PeriodicSpline& s, const PeriodicGrid& grid,
                             double target_mean) {
  std::vector<double> vals(static_cast<std::size_t>(grid.n()));
  for (int i = 0; i < grid.n(); ++i) {
    vals[static_cast<std::size_t>(i)] = s.eval(grid.alpha(i));
  }
  // resampling must not drift the conserved mean
  PeriodicSpline rs(grid, vals);
  const double shift = target_mean - rs.period_integral() / kTwoPi;
  for (double& v : vals) v += shift;
  return vals;
}

}  // namespace

GraphInterface redistribute(const GraphInterface& g, const RedistributeOptions& opt) {
  if (!opt.enabled) return g;
  const PeriodicSpline s(g.grid(), g.f.values());
  const double mean = s.period_integral() / kTwoPi;
  MonitorSamples mon = sample_monitor({&s}, opt.curvature_weight, 4 * g.n());
  const int n_new = grown_count(mon, g.grid(), opt);
  PeriodicGrid grid = equidistributed_grid(mon, n_new);
  return GraphInterface(PeriodicField(grid, resample(s, grid, mean)));
}

TwoPhaseState redistribute(const TwoPhaseState& st, const RedistributeOptions& opt) {
  if (!opt.enabled) return st;
  const PeriodicSpline sf(st.f.grid(), st.f.f.values());
  const PeriodicSpline sg(st.g.grid(), st.g.f.values());
  const double mean_f = sf.period_integral() / kTwoPi;
  const double mean_g = sg.period_integral() / kTwoPi;
  MonitorSamples mon = sample_monitor({&sf, &sg}, opt.curvature_weight, 4 * st.f.n());
  const int n_new = grown_count(mon, st.f.grid(), opt);
  PeriodicGrid grid = equidistributed_grid(mon, n_new);
  std::vector<double> fv = resample(sf, grid, mean_f);
  std::vector<double> gv = resample(sg, grid, mean_g);
  for (std::size_t i = 0; i < fv.size(); ++i) {
    if (!(fv[i] > gv[i])) {
      throw NearTouching("interfaces touched during redistribution", fv[i] - gv[i]);
    }
  }
  return TwoPhaseState(GraphInterface(PeriodicField(grid, std::move(fv))),
                       GraphInterface(PeriodicField(grid, std::move(gv))),
                       st.rho_bar_1, st.rho_bar_2);
}

namespace {

template <typename StateT>
struct ProblemOps {
  std::function<std::vector<double>(const StateT&)> pack;
  std::function<StateT(const StateT&, const std::vector<double>&)> unpack;
  std::function<std::vector<double>(double, const StateT&)> rhs;
  std::function<StateT(const StateT&)> post_accept;          // may be empty
  std::function<double(const StateT&)> min_slope_monitor;    // may be empty
};

template <typename StateT>
Trajectory<StateT> integrate_core(StateT state, const StepController& ctrl,
                                  const std::vector<double>& snapshot_times,
                                  const IntegrateOptions& opt,
                                  const ProblemOps<StateT>& ops,
                                  const SnapshotHook<StateT>& hook) {
  ctrl.validate();
  if (snapshot_times.empty()) throw Error("integrate requires snapshot times");
  for (std::size_t i = 1; i < snapshot_times.size(); ++i) {
    if (!(snapshot_times[i] > snapshot_times[i - 1])) {
      throw Error("snapshot times must be strictly increasing");
    }
  }
  Trajectory<StateT> traj;
  double t = 0.0;
  std::size_t snap_idx = 0;
  const auto record_snapshot = [&](double at) {
    traj.snapshots.emplace_back(at, state);
    if (hook) hook(at, state);
  };
  while (snap_idx < snapshot_times.size() && snapshot_times[snap_idx] <= t + 1e-15) {
    record_snapshot(t);
    ++snap_idx;
  }
  if (snap_idx >= snapshot_times.size()) {
    traj.termination = Termination::reached_t_end;
    traj.t_final = t;
    return traj;
  }
  const double t_end = snapshot_times.back();

  const auto rhs_vec = [&](double tt, const std::vector<double>& y) {
    std::vector<double> dy = ops.rhs(tt, ops.unpack(state, y));
    if (opt.backward) {
      for (double& v : dy) v = -v;
    }
    return dy;
  };

  std::vector<double> y = ops.pack(state);
  double dt = std::min(ctrl.dt_init, ctrl.dt_max);
  int consecutive_rejects = 0;
  try {
    while (t < t_end - 1e-15 && snap_idx < snapshot_times.size()) {
      const double dt_cap = snapshot_times[snap_idx] - t;
      const double dt_try = std::min(dt, dt_cap);
      StepOutcome out = dopri54_step(rhs_vec, y, t, dt_try, ctrl);
      StepRecord rec;
      rec.t = t;
      rec.dt = dt_try;
      rec.err_est = out.err_est;
      rec.accepted = out.accepted;
      rec.n_nodes = static_cast<int>(y.size());
      if (out.accepted) {
        consecutive_rejects = 0;
        t = out.t_new;
        state = ops.unpack(state, out.y);
        if (ops.post_accept) state = ops.post_accept(state);
        y = ops.pack(state);
        if (ops.min_slope_monitor) rec.min_slope = ops.min_slope_monitor(state);
        traj.telemetry.push_back(rec);
        if (opt.stop_on_turnover && ops.min_slope_monitor && rec.min_slope < -1e-12) {
          traj.termination = Termination::turnover_detected;
          traj.termination_detail = "min_slope crossed zero";
          traj.t_final = t;
          return traj;
        }
        while (snap_idx < snapshot_times.size() &&
               t >= snapshot_times[snap_idx] - 1e-12) {
          record_snapshot(t);
          ++snap_idx;
        }
        dt = out.dt_next;
      } else {
        traj.telemetry.push_back(rec);
        ++consecutive_rejects;
        if (consecutive_rejects > ctrl.max_rejects_per_step) {
          throw StepCollapse("max rejections per step exceeded", t, dt_try);
        }
        if (dt_try <= ctrl.dt_min * (1.0 + 1e-12) && dt_cap > ctrl.dt_min) {
          throw StepCollapse("step size collapsed to its floor", t, dt_try);
        }
        dt = out.dt_next;
      }
    }
    traj.termination = Termination::reached_t_end;
  } catch (const StepCollapse& e) {
    traj.termination = Termination::step_collapse;
    traj.termination_detail = e.what();
  } catch (const NearTouching& e) {
    traj.termination = Termination::arc_chord_failure;
    traj.termination_detail =
        std::string("near-touching: ") + e.what() +
        " (min separation " + std::to_string(e.min_separation) + ")";
  } catch (const ArcChordViolation& e) {
    traj.termination = Termination::arc_chord_failure;
    traj.termination_detail = e.what();
  } catch (const QuadratureNonconvergence& e) {
    traj.termination = Termination::quadrature_failure;
    traj.termination_detail = e.what();
  }
  traj.t_final = t;
  return traj;
}

}  // namespace

Trajectory<TwoPhaseState> integrate_two_phase(
    const TwoPhaseState& initial, const StepController& ctrl, const QuadratureSpec& spec,
    const std::vector<double>& snapshot_times, const IntegrateOptions& opt,
    const SnapshotHook<TwoPhaseState>& hook) {
  ProblemOps<TwoPhaseState> ops;
  ops.pack = [](const TwoPhaseState& s) {
    std::vector<double> y = s.f.f.values();
    y.insert(y.end(), s.g.f.values().begin(), s.g.f.values().end());
    return y;
  };
  ops.unpack = [](const TwoPhaseState& proto, const std::vector<double>& y) {
    const int n = proto.f.n();
    std::vector<double> fv(y.begin(), y.begin() + n);
    std::vector<double> gv(y.begin() + n, y.end());
    for (int i = 0; i < n; ++i) {
      if (!(fv[static_cast<std::size_t>(i)] > gv[static_cast<std::size_t>(i)])) {
        throw NearTouching("interfaces touched",
                           fv[static_cast<std::size_t>(i)] - gv[static_cast<std::size_t>(i)]);
      }
    }
    return TwoPhaseState(GraphInterface(PeriodicField(proto.grid(), std::move(fv))),
                         GraphInterface(PeriodicField(proto.grid(), std::move(gv))),
                         proto.rho_bar_1, proto.rho_bar_2);
  };
  ops.rhs = [&spec](double, const TwoPhaseState& s) {
    TwoPhaseRhs r = two_phase_rhs(s, spec);
    std::vector<double> df = r.f_t.values();
    std::vector<double> dg = r.g_t.values();
    project_out_mean(s.grid(), df);
    project_out_mean(s.grid(), dg);
    df.insert(df.end(), dg.begin(), dg.end());
    return df;
  };
  ops.post_accept = [&opt](const TwoPhaseState& s) { return redistribute(s, opt.redistribute); };
  return integrate_core(initial, ctrl, snapshot_times, opt, ops, hook);
}

Trajectory<GraphInterface> integrate_single_graph(
    const GraphInterface& initial, double rho_bar, const StepController& ctrl,
    const QuadratureSpec& spec, const std::vector<double>& snapshot_times,
    const IntegrateOptions& opt, const SnapshotHook<GraphInterface>& hook) {
  ProblemOps<GraphInterface> ops;
  ops.pack = [](const GraphInterface& s) { return s.f.values(); };
  ops.unpack = [](const GraphInterface& proto, const std::vector<double>& y) {
    return GraphInterface(PeriodicField(proto.grid(), y));
  };
  ops.rhs = [&spec, rho_bar](double, const GraphInterface& s) {
    std::vector<double> dy = single_graph_rhs(s.f, rho_bar, spec).values();
    project_out_mean(s.grid(), dy);
    return dy;
  };
  ops.post_accept = [&opt](const GraphInterface& s) { return redistribute(s, opt.redistribute); };
  return integrate_core(initial, ctrl, snapshot_times, opt, ops, hook);
}

Trajectory<RealLineGraph> integrate_realline(
    const RealLineGraph& initial, double delta_rho, const StepController& ctrl,
    const QuadratureSpec& spec, const std::vector<double>& snapshot_times,
    const IntegrateOptions& opt, const SnapshotHook<RealLineGraph>& hook) {
  ProblemOps<RealLineGraph> ops;
  ops.pack = [](const RealLineGraph& s) { return s.f; };
  ops.unpack = [](const RealLineGraph& proto, const std::vector<double>& y) {
    RealLineGraph g = proto;
    g.f = y;
    return g;
  };
  ops.rhs = [&spec, delta_rho](double, const RealLineGraph& s) {
    return graph_rhs_realline(s, delta_rho, spec).f_t;
  };
  return integrate_core(initial, ctrl, snapshot_times, opt, ops, hook);
}

Trajectory<Curve> integrate_contour(
    const Curve& initial, const StepController& ctrl, const QuadratureSpec& spec,
    const std::vector<double>& snapshot_times, const IntegrateOptions& opt,
    const SnapshotHook<Curve>& hook) {
  ProblemOps<Curve> ops;
  ops.pack = [](const Curve& c) {
    std::vector<double> y = c.z1_minus_alpha.values();
    y.insert(y.end(), c.z2.values().begin(), c.z2.values().end());
    return y;
  };
  ops.unpack = [](const Curve& proto, const std::vector<double>& y) {
    const int n = proto.n();
    std::vector<double> v1(y.begin(), y.begin() + n);
    std::vector<double> v2(y.begin() + n, y.end());
    return Curve(PeriodicField(proto.grid(), std::move(v1)),
                 PeriodicField(proto.grid(), std::move(v2)), proto.delta_rho);
  };
  ops.rhs = [&spec](double, const Curve& c) {
    ContourRhs r = contour_rhs_periodic(c, spec);
    std::vector<double> dy = r.z1_t.values();
    dy.insert(dy.end(), r.z2_t.values().begin(), r.z2_t.values().end());
    return dy;
  };
  ops.post_accept = [](const Curve& c) {
    arc_chord_constant(c);  // throws on violation
    return c;
  };
  ops.min_slope_monitor = [](const Curve& c) { return min_slope(c).first; };
  return integrate_core(initial, ctrl, snapshot_times, opt, ops, hook);
}

// ---- Galerkin backend ----

Spectrum project_modes(const Spectrum& s, int n_modes) {
  Spectrum out = s;
  for (int k = n_modes + 1; k <= s.max_mode() - 1; ++k) {
    out.cos_coeff[static_cast<std::size_t>(k - 1)] = 0.0;
    out.sin_coeff[static_cast<std::size_t>(k - 1)] = 0.0;
  }
  if (s.max_mode() > n_modes) out.nyquist = 0.0;
  return out;
}

GalerkinSpectra galerkin_project_curve(const Curve& curve, int n_modes) {
  GalerkinSpectra g;
  g.n_modes = n_modes;
  g.z1ma = project_modes(curve.z1_minus_alpha.spectrum(), n_modes);
  g.z2 = project_modes(curve.z2.spectrum(), n_modes);
  return g;
}

Curve galerkin_synthesize(const GalerkinSpectra& state, int grid_n, double delta_rho) {
  PeriodicGrid grid = PeriodicGrid::uniform(grid_n);
  // Re-embed the truncated spectra onto the working grid size.
  auto resize = [&](const Spectrum& s) {
    Spectrum out;
    out.n = grid_n;
    out.a0 = s.a0;
    out.nyquist = 0.0;
    out.cos_coeff.assign(static_cast<std::size_t>(grid_n / 2 - 1), 0.0);
    out.sin_coeff.assign(static_cast<std::size_t>(grid_n / 2 - 1), 0.0);
    const int copy = std::min(state.n_modes, std::min(s.max_mode() - 1, grid_n / 2 - 1));
    for (int k = 1; k <= copy; ++k) {
      out.cos_coeff[static_cast<std::size_t>(k - 1)] = s.cos_coeff[static_cast<std::size_t>(k - 1)];
      out.sin_coeff[static_cast<std::size_t>(k - 1)] = s.sin_coeff[static_cast<std::size_t>(k - 1)];
    }
    return out;
  };
  return Curve(PeriodicField::from_spectrum(grid, resize(state.z1ma)),
               PeriodicField::from_spectrum(grid, resize(state.z2)), delta_rho);
}

GalerkinSpectra galerkin_rhs(const GalerkinSpectra& state, int grid_n,
                             double delta_rho, const QuadratureSpec& spec) {
  if (grid_n < 4 * state.n_modes) {
    throw AliasingError("galerkin evaluation requires grid_n >= 4 n_modes");
  }
  Curve curve = galerkin_synthesize(state, grid_n, delta_rho);
  ContourRhs rhs = contour_rhs_periodic(curve, spec);
  GalerkinSpectra out;
  out.n_modes = state.n_modes;
  out.z1ma = project_modes(rhs.z1_t.spectrum(), state.n_modes);
  out.z2 = project_modes(rhs.z2_t.spectrum(), state.n_modes);
  return out;
}

namespace {

std::vector<double> pack_spectra(const GalerkinSpectra& s) {
  std::vector<double> y;
  y.reserve(static_cast<std::size_t>(4 * s.n_modes + 2));
  y.push_back(s.z1ma.a0);
  y.push_back(s.z2.a0);
  for (int k = 1; k <= s.n_modes; ++k) {
    y.push_back(s.z1ma.cos_coeff[static_cast<std::size_t>(k - 1)]);
    y.push_back(s.z1ma.sin_coeff[static_cast<std::size_t>(k - 1)]);
    y.push_back(s.z2.cos_coeff[static_cast<std::size_t>(k - 1)]);
    y.push_back(s.z2.sin_coeff[static_cast<std::size_t>(k - 1)]);
  }
  return y;
}

GalerkinSpectra unpack_spectra(const GalerkinSpectra& proto, const std::vector<double>& y) {
  GalerkinSpectra s = proto;
  std::size_t p = 0;
  s.z1ma.a0 = y[p++];
  s.z2.a0 = y[p++];
  for (int k = 1; k <= s.n_modes; ++k) {
    s.z1ma.cos_coeff[static_cast<std::size_t>(k - 1)] = y[p++];
    s.z1ma.sin_coeff[static_cast<std::size_t>(k - 1)] = y[p++];
    s.z2.cos_coeff[static_cast<std::size_t>(k - 1)] = y[p++];
    s.z2.sin_coeff[static_cast<std::size_t>(k - 1)] = y[p++];
  }
  return s;
}

}  // namespace

Trajectory<GalerkinSpectra> integrate_galerkin(
    const GalerkinSpectra& initial, int grid_n, double delta_rho,
    const StepController& ctrl, const QuadratureSpec& spec,
    const std::vector<double>& snapshot_times, const IntegrateOptions& opt) {
  ProblemOps<GalerkinSpectra> ops;
  ops.pack = pack_spectra;
  ops.unpack = unpack_spectra;
  ops.rhs = [grid_n, delta_rho, &spec](double, const GalerkinSpectra& s) {
    return pack_spectra(galerkin_rhs(s, grid_n, delta_rho, spec));
  };
  return integrate_core(initial, ctrl, snapshot_times, opt, ops, {});
}

}  // namespace muskat
