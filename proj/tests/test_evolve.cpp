#include <cmath>
#include <functional>

#include "doctest.h"
#include "muskat/errors.hpp"
#include "muskat/evolve.hpp"
#include "muskat/initial_data.hpp"

using namespace muskat;

namespace {

PeriodicField make_field(int n, const std::function<double(double)>& fn) {
  PeriodicGrid grid = PeriodicGrid::uniform(n);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = fn(grid.alpha(i));
  return PeriodicField(grid, std::move(v));
}

}  // namespace

TEST_CASE("one controlled step of y' = -y") {
  StepController ctrl;
  ctrl.dt_init = 0.1;
  ctrl.dt_max = 0.1;
  const RhsFn rhs = [](double, const std::vector<double>& y) {
    return std::vector<double>{-y[0]};
  };
  StepOutcome out = dopri54_step(rhs, {1.0}, 0.0, 0.1, ctrl);
  CHECK(out.accepted);
  CHECK(std::fabs(out.y[0] - std::exp(-0.1)) < 1e-8);
  CHECK(out.t_new == doctest::Approx(0.1));
}

TEST_CASE("zero rhs leaves the state unchanged with zero error") {
  StepController ctrl;
  const RhsFn rhs = [](double, const std::vector<double>& y) {
    return std::vector<double>(y.size(), 0.0);
  };
  StepOutcome out = dopri54_step(rhs, {2.0, -3.0}, 0.0, 1e-3, ctrl);
  CHECK(out.accepted);
  CHECK(out.err_est == 0.0);
  CHECK(out.y[0] == 2.0);
  CHECK(out.y[1] == -3.0);
}

TEST_CASE("stiff step gets rejected with a smaller proposal") {
  StepController ctrl;
  const double lambda = -1e6;
  const RhsFn rhs = [&](double, const std::vector<double>& y) {
    return std::vector<double>{lambda * y[0]};
  };
  StepOutcome out = dopri54_step(rhs, {1.0}, 0.0, 1e-3, ctrl);
  CHECK_FALSE(out.accepted);
  CHECK(out.dt_next < 1e-3);
}

TEST_CASE("global order of the embedded pair is five") {
  const RhsFn rhs = [](double, const std::vector<double>& y) {
    return std::vector<double>{-y[0]};
  };
  std::vector<double> dts = {0.1, 0.05, 0.025};
  std::vector<double> errs;
  for (double dt : dts) {
    std::vector<double> y = {1.0};
    double t = 0.0;
    const int steps = static_cast<int>(std::lround(1.0 / dt));
    for (int s = 0; s < steps; ++s) {
      y = dopri54_apply(rhs, y, t, dt).y5;
      t += dt;
    }
    errs.push_back(std::fabs(y[0] - std::exp(-1.0)));
  }
  const double slope1 = std::log(errs[0] / errs[1]) / std::log(2.0);
  const double slope2 = std::log(errs[1] / errs[2]) / std::log(2.0);
  CHECK(slope1 == doctest::Approx(5.0).epsilon(0.06));
  CHECK(slope2 == doctest::Approx(5.0).epsilon(0.06));
}

TEST_CASE("periodic spline interpolates cos to high accuracy") {
  auto f = make_field(64, [](double a) { return std::cos(a); });
  PeriodicSpline s = spline_periodic(f);
  double worst = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const double x = -kPi + kTwoPi * i / 4096.0;
    worst = std::max(worst, std::fabs(s.eval(x) - std::cos(x)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("periodic spline reproduces nodal data and constants") {
  auto f = make_field(32, [](double a) { return std::sin(a); });
  PeriodicSpline s = spline_periodic(f);
  for (int i = 0; i < f.n(); ++i) {
    CHECK(s.eval(f.grid().alpha(i)) == doctest::Approx(f.value(i)).epsilon(1e-13));
  }
  auto c = make_field(32, [](double) { return 2.5; });
  PeriodicSpline sc = spline_periodic(c);
  for (int i = 0; i < 200; ++i) {
    CHECK(sc.eval(-kPi + i * 0.0312) == doctest::Approx(2.5).epsilon(1e-13));
  }
}

TEST_CASE("spline rejects duplicate nodes") {
  std::vector<double> x = {0.0, 0.5, 0.5, 1.0};
  std::vector<double> y = {0.0, 1.0, 1.0, 0.0};
  CHECK_THROWS_AS(PeriodicSpline(x, y), SplineError);
}

TEST_CASE("spline is C2 across the period seam") {
  auto f = make_field(48, [](double a) { return std::sin(2 * a) + 0.3 * std::cos(a); });
  PeriodicSpline s = spline_periodic(f);
  const double eps = 1e-7;
  CHECK(s.eval(kPi - eps) == doctest::Approx(s.eval(-kPi + eps)).epsilon(1e-5));
  CHECK(s.derivative(kPi - eps) ==
        doctest::Approx(s.derivative(-kPi + eps)).epsilon(1e-4));
  CHECK(s.second_derivative(kPi - eps) ==
        doctest::Approx(s.second_derivative(-kPi + eps)).epsilon(1e-2));
}

TEST_CASE("redistribution leaves a flat graph on the uniform grid") {
  auto f = make_field(64, [](double) { return 0.2; });
  GraphInterface g(f);
  RedistributeOptions opt;
  GraphInterface out = redistribute(g, opt);
  CHECK(out.grid().uniform());
  CHECK(out.n() == 64);
  for (int i = 0; i < out.n(); ++i) {
    CHECK(std::fabs(out.grid().alpha(i) - g.grid().alpha(i)) < 1e-12);
    CHECK(std::fabs(out.f.value(i) - 0.2) < 1e-12);
  }
}

TEST_CASE("redistribution concentrates nodes where the monitor is large") {
  // steep localized bump
  auto f = make_field(128, [](double a) {
    return 0.8 * std::exp(-30.0 * a * a);
  });
  GraphInterface g(f);
  RedistributeOptions opt;
  opt.growth_threshold = 1e9;  // keep the node count fixed for this check
  GraphInterface out = redistribute(g, opt);

  // oracle: node share in |a| < 0.4 should approximate the monitor share
  PeriodicSpline s = spline_periodic(f);
  double inside = 0.0, total = 0.0;
  const int fine = 4000;
  for (int i = 0; i < fine; ++i) {
    const double x = -kPi + kTwoPi * (i + 0.5) / fine;
    double v, dv, d2v;
    s.eval_all(x, v, dv, d2v);
    const double slope2 = 1.0 + dv * dv;
    const double m = std::sqrt(slope2) * (1.0 + std::fabs(d2v) / std::pow(slope2, 1.5));
    total += m;
    if (std::fabs(x) < 0.4) inside += m;
  }
  int count_inside = 0;
  for (int i = 0; i < out.n(); ++i) {
    if (std::fabs(out.grid().alpha(i)) < 0.4) ++count_inside;
  }
  const double node_share = static_cast<double>(count_inside) / out.n();
  const double monitor_share = inside / total;
  CHECK(node_share == doctest::Approx(monitor_share).epsilon(0.08));
  // and strictly denser than the flat region
  int count_flat = 0;
  for (int i = 0; i < out.n(); ++i) {
    const double a = out.grid().alpha(i);
    if (a > 1.0 && a < 1.8) ++count_flat;
  }
  CHECK(count_inside > count_flat);
}

TEST_CASE("redistribution preserves the graph as a point set") {
  auto f = make_field(96, [](double a) { return 0.3 * std::sin(a) + 0.1 * std::cos(3 * a); });
  GraphInterface g(f);
  RedistributeOptions opt;
  GraphInterface out = redistribute(g, opt);
  PeriodicSpline before = spline_periodic(g.f);
  PeriodicSpline after = spline_periodic(out.f);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double x = -kPi + kTwoPi * i / 2000.0;
    worst = std::max(worst, std::fabs(before.eval(x) - after.eval(x)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("redistribution grows the grid when the monitor peaks") {
  auto f = make_field(64, [](double a) { return 0.9 * std::exp(-80.0 * a * a); });
  GraphInterface g(f);
  RedistributeOptions opt;
  opt.growth_threshold = 2.0;
  GraphInterface out = redistribute(g, opt);
  CHECK(out.n() == 96);  // 1.5x growth

  // a second pass on the equidistributed grid must not grow again
  GraphInterface out2 = redistribute(out, opt);
  CHECK(out2.n() == 96);
}

TEST_CASE("integrating a zero rhs keeps the state and reaches the end") {
  auto f = make_field(32, [](double a) { return 0.1 * std::cos(a); });
  GraphInterface g(f);
  StepController ctrl;
  ctrl.dt_init = 1e-3;
  QuadratureSpec spec;
  IntegrateOptions opt;
  opt.redistribute.enabled = false;
  Trajectory<GraphInterface> traj =
      integrate_single_graph(g, 0.0, ctrl, spec, {0.0, 0.01}, opt);
  CHECK(traj.termination == Termination::reached_t_end);
  REQUIRE(traj.snapshots.size() == 2);
  for (int i = 0; i < g.n(); ++i) {
    CHECK(traj.snapshots[1].second.f.value(i) == doctest::Approx(g.f.value(i)).epsilon(1e-14));
  }
}

TEST_CASE("mean conservation along a short two-phase run") {
  QuadratureSpec spec;
  StepController ctrl;
  ctrl.dt_init = 1e-5;
  TwoPhaseState st = paper_two_phase(64);
  IntegrateOptions opt;
  Trajectory<TwoPhaseState> traj =
      integrate_two_phase(st, ctrl, spec, {0.0, 2e-4, 4e-4}, opt);
  REQUIRE(traj.termination == Termination::reached_t_end);
  const double f0 = field_mean(traj.snapshots.front().second.f.f);
  const double g0 = field_mean(traj.snapshots.front().second.g.f);
  for (const auto& [t, s] : traj.snapshots) {
    CHECK(std::fabs(field_mean(s.f.f) - f0) < 1e-6);
    CHECK(std::fabs(field_mean(s.g.f) - g0) < 1e-6);
  }
}

TEST_CASE("galerkin projection of the flat curve is zero") {
  QuadratureSpec spec;
  Curve flat = Curve::flat(64);
  GalerkinSpectra g = galerkin_project_curve(flat, 16);
  GalerkinSpectra rhs = galerkin_rhs(g, 64, 4.0 * kPi, spec);
  for (int k = 1; k <= 16; ++k) {
    CHECK(rhs.z1ma.amplitude(k) < 1e-11);
    CHECK(rhs.z2.amplitude(k) < 1e-11);
  }
  CHECK(std::fabs(rhs.z1ma.a0) < 1e-11);
  CHECK(std::fabs(rhs.z2.a0) < 1e-11);
}

TEST_CASE("galerkin projection is idempotent") {
  auto f = make_field(128, [](double a) { return 0.1 * std::cos(a) + 0.05 * std::sin(5 * a); });
  Spectrum once = project_modes(f.spectrum(), 8);
  Spectrum twice = project_modes(once, 8);
  for (int k = 1; k <= 63; ++k) {
    CHECK(once.amplitude(k) == twice.amplitude(k));
  }
}

TEST_CASE("galerkin rhs matches the projected collocation rhs") {
  QuadratureSpec spec;
  const int n = 128, nmodes = 16;
  auto z1ma = make_field(n, [](double a) { return 0.06 * std::sin(a) + 0.02 * std::cos(2 * a); });
  auto z2 = make_field(n, [](double a) { return 0.1 * std::cos(a) - 0.03 * std::sin(3 * a); });
  Curve c(z1ma, z2, 4.0 * kPi);
  GalerkinSpectra state = galerkin_project_curve(c, nmodes);
  GalerkinSpectra grhs = galerkin_rhs(state, n, 4.0 * kPi, spec);

  // collocation route: full rhs on the same grid, then project
  Curve synth = galerkin_synthesize(state, n, 4.0 * kPi);
  ContourRhs crhs = contour_rhs_periodic(synth, spec);
  Spectrum p1 = project_modes(crhs.z1_t.spectrum(), nmodes);
  Spectrum p2 = project_modes(crhs.z2_t.spectrum(), nmodes);
  for (int k = 1; k <= nmodes; ++k) {
    CHECK(grhs.z1ma.amplitude(k) == doctest::Approx(p1.amplitude(k)).epsilon(1e-8));
    CHECK(grhs.z2.amplitude(k) == doctest::Approx(p2.amplitude(k)).epsilon(1e-8));
  }
}

TEST_CASE("galerkin rejects too-small grids") {
  auto f = make_field(64, [](double a) { return 0.1 * std::cos(a); });
  Curve c = Curve::from_graph(f);
  GalerkinSpectra g = galerkin_project_curve(c, 16);
  QuadratureSpec spec;
  CHECK_THROWS_AS(galerkin_rhs(g, 32, 4.0 * kPi, spec), AliasingError);
}

TEST_CASE("galerkin and collocation trajectories agree on a short horizon") {
  QuadratureSpec spec;
  StepController ctrl;
  ctrl.dt_init = 1e-4;
  const int n = 128, nmodes = 16;
  auto z1ma = make_field(n, [](double a) { return 0.06 * std::sin(a) + 0.02 * std::cos(2 * a); });
  auto z2 = make_field(n, [](double a) { return 0.1 * std::cos(a) - 0.03 * std::sin(3 * a); });
  Curve c(z1ma, z2, 4.0 * kPi);

  IntegrateOptions opt;
  std::vector<double> times = {5e-4, 1e-3};
  Trajectory<Curve> coll = integrate_contour(c, ctrl, spec, times, opt);
  REQUIRE(coll.termination == Termination::reached_t_end);

  GalerkinSpectra g0 = galerkin_project_curve(c, nmodes);
  Trajectory<GalerkinSpectra> gal =
      integrate_galerkin(g0, n, 4.0 * kPi, ctrl, spec, times, opt);
  REQUIRE(gal.termination == Termination::reached_t_end);

  Curve cg = galerkin_synthesize(gal.snapshots.back().second, n, 4.0 * kPi);
  const Curve& cc = coll.snapshots.back().second;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    worst = std::max(worst, std::fabs(cg.z1_minus_alpha.value(i) - cc.z1_minus_alpha.value(i)));
    worst = std::max(worst, std::fabs(cg.z2.value(i) - cc.z2.value(i)));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("step collapse is recorded, not thrown") {
  // a rhs whose magnitude explodes forces perpetual rejection
  auto f = make_field(32, [](double a) { return 0.01 * std::cos(a); });
  GraphInterface g(f);
  StepController ctrl;
  ctrl.dt_init = 1e-3;
  ctrl.dt_min = 1e-4;  // high floor so the controller hits it quickly
  ctrl.rtol = 1e-13;
  ctrl.atol = 1e-16;
  QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  spec.abs_tol = 1e-8;
  IntegrateOptions opt;
  opt.redistribute.enabled = false;
  // strongly unstable single-interface run (negative density jump)
  Trajectory<GraphInterface> traj =
      integrate_single_graph(g, -50.0, ctrl, spec, {0.0, 0.5}, opt);
  CHECK(traj.termination == Termination::step_collapse);
  CHECK_FALSE(traj.termination_detail.empty());
}
