#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "muskat/dynamics.hpp"
#include "muskat/errors.hpp"
#include "muskat/initial_data.hpp"
#include "muskat/spline.hpp"

using namespace muskat;

namespace {

PeriodicField make_field(int n, const std::function<double(double)>& fn) {
  PeriodicGrid grid = PeriodicGrid::uniform(n);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = fn(grid.alpha(i));
  return PeriodicField(grid, std::move(v));
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

std::function<double(double)> random_trig(std::mt19937& rng, int degree, double amp) {
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<double> a(static_cast<std::size_t>(degree)), b(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) {
    a[static_cast<std::size_t>(k)] = u(rng);
    b[static_cast<std::size_t>(k)] = u(rng);
  }
  return [a, b, degree](double x) {
    double v = 0.0;
    for (int k = 1; k <= degree; ++k) {
      v += a[static_cast<std::size_t>(k - 1)] * std::cos(k * x) +
           b[static_cast<std::size_t>(k - 1)] * std::sin(k * x);
    }
    return v;
  };
}

}  // namespace

TEST_CASE("interaction of a constant with itself vanishes") {
  QuadratureSpec spec;
  auto f = make_field(64, [](double) { return 0.4; });
  PeriodicField out = interaction_rhs(f, f, spec);
  CHECK(max_abs(out.values()) < 1e-11);
}

TEST_CASE("interaction of two flat interfaces vanishes") {
  QuadratureSpec spec;
  auto u = make_field(64, [](double) { return 0.1; });
  auto v = make_field(64, [](double) { return -0.92; });
  PeriodicField out = interaction_rhs(u, v, spec);
  CHECK(max_abs(out.values()) < 1e-11);
}

TEST_CASE("self-interaction linearizes to -2 pi Lambda") {
  QuadratureSpec spec;
  const double eps = 1e-3;
  auto f = make_field(64, [&](double a) { return eps * std::cos(a); });
  PeriodicField out = interaction_rhs(f, f, spec);
  double worst_rel = 0.0;
  for (int i = 0; i < f.n(); ++i) {
    const double expect = -2.0 * kPi * f.value(i);
    worst_rel = std::max(worst_rel, std::fabs(out.value(i) - expect) / (2.0 * kPi * eps));
  }
  CHECK(worst_rel < 3.0 * eps);
}

TEST_CASE("two-phase rhs on the published initial data") {
  QuadratureSpec spec;
  TwoPhaseState state = paper_two_phase(128);
  TwoPhaseRhs rhs = two_phase_rhs(state, spec);
  for (double v : rhs.f_t.values()) CHECK(std::isfinite(v));
  for (double v : rhs.g_t.values()) CHECK(std::isfinite(v));

  // the lower interface moves up toward f near its bump, and the gap above
  // the bump region shrinks somewhere (the curves approach)
  const PaperTwoPhaseParams p;
  double g_t_up = -1e300;
  double fastest_approach = 1e300;  // min of d/dt (f - g) over the bump region
  for (int i = 0; i < state.grid().n(); ++i) {
    const double d = std::fabs(wrap_angle(state.grid().alpha(i) - p.m2));
    if (d < 0.5) {
      g_t_up = std::max(g_t_up, rhs.g_t.value(i));
      fastest_approach =
          std::min(fastest_approach, rhs.f_t.value(i) - rhs.g_t.value(i));
    }
  }
  CHECK(g_t_up > 0.0);
  CHECK(fastest_approach < 0.0);
}

TEST_CASE("two-phase rhs vanishes with zero density jumps") {
  QuadratureSpec spec;
  auto f = make_field(32, [](double a) { return 0.1 + 0.05 * std::cos(a); });
  auto g = make_field(32, [](double a) { return -0.9 + 0.05 * std::sin(a); });
  TwoPhaseState st(GraphInterface(f), GraphInterface(g), 0.0, 0.0);
  TwoPhaseRhs rhs = two_phase_rhs(st, spec);
  CHECK(max_abs(rhs.f_t.values()) == 0.0);
  CHECK(max_abs(rhs.g_t.values()) == 0.0);
}

TEST_CASE("two-phase with rho_bar_2 = 0 reduces to the single-interface rhs") {
  QuadratureSpec spec;
  auto f = make_field(48, [](double a) { return 0.1 + 0.03 * std::cos(2 * a); });
  auto g = make_field(48, [](double a) { return -1.0 + 0.02 * std::sin(a); });
  const double rb1 = 2.5;
  TwoPhaseState st(GraphInterface(f), GraphInterface(g), rb1, 0.0);
  TwoPhaseRhs rhs = two_phase_rhs(st, spec);
  PeriodicField direct = single_graph_rhs(f, rb1, spec);
  for (int i = 0; i < f.n(); ++i) {
    CHECK(rhs.f_t.value(i) == doctest::Approx(direct.value(i)).epsilon(1e-14));
  }
}

TEST_CASE("grid mean of the two-phase rhs vanishes") {
  QuadratureSpec spec;
  auto f = make_field(96, [](double a) { return 0.3 + 0.08 * std::cos(a) + 0.03 * std::sin(2 * a); });
  auto g = make_field(96, [](double a) { return -0.6 + 0.05 * std::sin(a) - 0.04 * std::cos(3 * a); });
  TwoPhaseState state(GraphInterface(f), GraphInterface(g), 2.0, 0.5);
  TwoPhaseRhs rhs = two_phase_rhs(state, spec);
  double mf = 0.0, mg = 0.0;
  for (int i = 0; i < state.grid().n(); ++i) {
    mf += rhs.f_t.value(i);
    mg += rhs.g_t.value(i);
  }
  mf /= state.grid().n();
  mg /= state.grid().n();
  const double scale = std::max(max_abs(rhs.f_t.values()), max_abs(rhs.g_t.values()));
  CHECK(std::fabs(mf) < 1e-8 * std::max(scale, 1.0));
  CHECK(std::fabs(mg) < 1e-8 * std::max(scale, 1.0));
}

TEST_CASE("interaction rhs is translation equivariant") {
  QuadratureSpec spec;
  const int n = 64;
  std::mt19937 rng(17);
  auto base = random_trig(rng, 4, 0.05);
  auto f = make_field(n, base);
  const double c = kTwoPi / n;  // one grid cell
  auto fc = make_field(n, [&](double a) { return base(a - c); });
  PeriodicField rf = interaction_rhs(f, f, spec);
  PeriodicField rfc = interaction_rhs(fc, fc, spec);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const int shifted = (i + 1) % n;  // alpha_{i+1} = alpha_i + c
    worst = std::max(worst, std::fabs(rfc.value(shifted) - rf.value(i)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("contour rhs on the flat curve vanishes") {
  QuadratureSpec spec;
  Curve flat = Curve::flat(64);
  ContourRhs rhs = contour_rhs_periodic(flat, spec);
  CHECK(max_abs(rhs.z1_t.values()) < 1e-11);
  CHECK(max_abs(rhs.z2_t.values()) < 1e-11);
}

TEST_CASE("contour rhs linearizes to the half-jump lambda operator") {
  QuadratureSpec spec;
  const double eps = 1e-3;
  auto f = make_field(64, [&](double a) { return eps * std::cos(a); });
  Curve c = Curve::from_graph(f, 4.0 * kPi);
  ContourRhs rhs = contour_rhs_periodic(c, spec);
  // f_t = -(delta_rho/2) Lambda f = -2 pi eps cos(a)
  double worst_rel = 0.0;
  for (int i = 0; i < f.n(); ++i) {
    const double expect = -2.0 * kPi * f.value(i);
    worst_rel =
        std::max(worst_rel, std::fabs(rhs.z2_t.value(i) - expect) / (2.0 * kPi * eps));
  }
  CHECK(worst_rel < 3.0 * eps);
  CHECK(max_abs(rhs.z1_t.values()) < 10.0 * eps * eps);
}

TEST_CASE("contour rhs preserves odd parity") {
  QuadratureSpec spec;
  const int n = 64;
  auto z1ma = make_field(n, [](double b) { return -0.3 * std::sin(b); });
  auto z2 = make_field(n, [](double b) { return 0.2 * std::sin(2 * b); });
  Curve c(z1ma, z2);
  ContourRhs rhs = contour_rhs_periodic(c, spec);
  // mirror node of i is n - i; both components stay odd
  for (int i = 1; i < n; ++i) {
    const int j = (n - i) % n;
    if (j == i || j == 0) continue;
    CHECK(rhs.z1_t.value(i) == doctest::Approx(-rhs.z1_t.value(j)).epsilon(2e-8));
    CHECK(rhs.z2_t.value(i) == doctest::Approx(-rhs.z2_t.value(j)).epsilon(2e-8));
  }
}

TEST_CASE("kernel forms agree on random smooth graphs") {
  QuadratureSpec spec;
  std::mt19937 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    auto fn = random_trig(rng, 5, 0.08);
    auto f = make_field(128, fn);
    PeriodicField inter = interaction_rhs(f, f, spec);  // rho_bar = 1
    Curve c = Curve::from_graph(f, 4.0 * kPi);          // delta_rho/(4 pi) = 1
    ContourRhs cont = contour_rhs_periodic(c, spec);
    double worst = 0.0;
    for (int i = 0; i < f.n(); ++i) {
      worst = std::max(worst, std::fabs(inter.value(i) - cont.z2_t.value(i)));
    }
    CHECK(worst < 1e-8);
    CHECK(max_abs(cont.z1_t.values()) < 1e-10);
  }
}

TEST_CASE("near-touching interfaces raise the dedicated error") {
  QuadratureSpec spec;
  auto u = make_field(64, [](double) { return 1e-9; });
  auto v = make_field(64, [](double) { return -1e-9; });
  CHECK_THROWS_AS(interaction_rhs(u, v, spec), NearTouching);
}

TEST_CASE("realline rhs of zero is zero") {
  QuadratureSpec spec;
  RealLineGraph g = RealLineGraph::uniform(20.0, 201, std::vector<double>(201, 0.0));
  RealLineRhs rhs = graph_rhs_realline(g, 4.0 * kPi, spec);
  CHECK(max_abs(rhs.f_t) < 1e-12);
  CHECK_FALSE(rhs.truncation_warning);
}

TEST_CASE("realline bump crest moves down") {
  QuadratureSpec spec;
  const double L = 20.0;
  const int n = 401;
  RealLineGraph g = RealLineGraph::uniform(L, n, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    const double x = g.x[static_cast<std::size_t>(i)];
    g.f[static_cast<std::size_t>(i)] =
        std::fabs(x) < 1.0 ? 0.1 * std::pow(std::cos(0.5 * kPi * x), 2) : 0.0;
  }
  RealLineRhs rhs = graph_rhs_realline(g, 4.0 * kPi, spec);
  const int crest = n / 2;  // x = 0
  CHECK(rhs.f_t[static_cast<std::size_t>(crest)] < 0.0);

  // independent fine-grid quadrature oracle at the crest
  {
    const double fa = g.f[static_cast<std::size_t>(crest)];
    NaturalSpline s(g.x, g.f);
    const double dfa = s.derivative(0.0);
    const double d2fa = s.second_derivative(0.0);
    const int m = 400000;
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      const double u = -L + 2.0 * L * (j + 0.5) / m;
      if (std::fabs(u) < 1e-6) {
        total += (d2fa / (1.0 + dfa * dfa)) * (2.0 * L / m);
        continue;
      }
      double fb, dfb;
      s.eval_with_derivative(-u, fb, dfb);
      const double df = fa - fb;
      total += u * (dfa - dfb) / (u * u + df * df) * (2.0 * L / m);
    }
    total *= 4.0 * kPi / (2.0 * kPi);
    CHECK(rhs.f_t[static_cast<std::size_t>(crest)] ==
          doctest::Approx(total).epsilon(1e-4));
  }
}

TEST_CASE("realline gaussian linearizes to the fractional laplacian") {
  QuadratureSpec spec;
  const double eps = 1e-3;
  RealLineGraph g = gaussian_realline(eps, 1.0 / std::sqrt(2.0), 20.0, 401);  // exp(-x^2)
  const double delta_rho = 4.0 * kPi;
  RealLineRhs rhs = graph_rhs_realline(g, delta_rho, spec);
  // oracle: Lambda e^{-x^2}(x) = (1/sqrt(pi)) int_0^inf xi e^{-xi^2/4} cos(xi x) dxi
  const auto lambda_gauss = [&](double x) {
    const int m = 20000;
    const double ximax = 60.0;
    double total = 0.0;
    for (int j = 0; j < m; ++j) {
      const double xi = ximax * (j + 0.5) / m;
      total += xi * std::exp(-0.25 * xi * xi) * std::cos(xi * x) * (ximax / m);
    }
    return total / std::sqrt(kPi);
  };
  double worst = 0.0;
  for (int i = 180; i <= 220; ++i) {  // central region where f is not tiny
    const double x = g.x[static_cast<std::size_t>(i)];
    const double expect = -(delta_rho / 2.0) * eps * lambda_gauss(x);
    worst = std::max(worst, std::fabs(rhs.f_t[static_cast<std::size_t>(i)] - expect));
  }
  CHECK(worst < 30.0 * eps * eps);
}

TEST_CASE("realline truncation warning fires on slow decay") {
  QuadratureSpec spec;
  RealLineGraph g = gaussian_realline(0.1, 8.0, 20.0, 201);  // fat gaussian
  RealLineRhs rhs = graph_rhs_realline(g, 4.0 * kPi, spec);
  CHECK(rhs.truncation_warning);
}

TEST_CASE("velocity-derivative on the flat curve vanishes") {
  QuadratureSpec spec;
  Curve flat = Curve::flat(64);
  CHECK(std::fabs(dalpha_velocity1(flat, 0.3, spec)) < 1e-10);
}

TEST_CASE("velocity-derivative at a symmetric crest is second order small") {
  QuadratureSpec spec;
  const double eps = 1e-3;
  auto f = make_field(64, [&](double a) { return eps * std::cos(a); });
  Curve c = Curve::from_graph(f, 4.0 * kPi);
  CHECK(std::fabs(dalpha_velocity1(c, 0.0, spec)) < 50.0 * eps * eps);
}

TEST_CASE("velocity-derivative rejects vertical tangent points") {
  QuadratureSpec spec;
  auto z1ma = make_field(64, [](double b) { return -std::sin(b); });
  auto z2 = make_field(64, [](double b) { return 0.3 * std::sin(b); });
  Curve c(z1ma, z2);
  CHECK_THROWS_AS(dalpha_velocity1(c, 0.0, spec), UseReducida);
}

TEST_CASE("velocity-derivative matches a finite difference of the velocity") {
  QuadratureSpec spec;
  auto z1ma = make_field(96, [](double b) { return 0.1 * std::sin(b); });
  auto z2 = make_field(96, [](double b) { return 0.15 * std::sin(2 * b); });
  Curve c(z1ma, z2);
  const double alpha0 = 0.7;
  const double h = 1e-4;
  ContourRhs rhs = contour_rhs_periodic(c, spec);
  PeriodicSpline v1(c.grid(), rhs.z1_t.values());
  const double fd = (v1.eval(alpha0 + h) - v1.eval(alpha0 - h)) / (2.0 * h);
  const double direct = dalpha_velocity1(c, alpha0, spec);
  CHECK(direct == doctest::Approx(fd).epsilon(5e-4));
}
