#include "muskat/dynamics.hpp"

#include <cmath>
#include <memory>

#include "muskat/errors.hpp"
#include "muskat/parallel.hpp"
#include "muskat/spline.hpp"

namespace muskat {

namespace {

constexpr double kDenomFloor = 1e-14;

// cosh(x) - cos(y) without cancellation near (0, 0).
inline double cosh_minus_cos(double x, double y) {
  const double sh = std::sinh(0.5 * x);
  const double sn = std::sin(0.5 * y);
  return 2.0 * (sh * sh + sn * sn);
}

// The integrands below sample splines at alpha - beta, so their smoothness
// breaks sit at beta = alpha - x_j. Panels aligned with these keep the
// adaptive rule at full order. On uniform grids the wrapped set is the same
// for every node.
std::vector<double> knot_breaks(const PeriodicGrid& grid, double alpha) {
  std::vector<double> breaks(static_cast<std::size_t>(grid.n()));
  for (int j = 0; j < grid.n(); ++j) {
    breaks[static_cast<std::size_t>(j)] = wrap_angle(alpha - grid.alpha(j));
  }
  return breaks;
}

std::vector<double> shared_knot_breaks(const PeriodicGrid& grid) {
  std::vector<double> breaks(static_cast<std::size_t>(grid.n()));
  const double d = grid.spacing();
  for (int k = 0; k < grid.n(); ++k) {
    breaks[static_cast<std::size_t>(k)] = wrap_angle(k * d);
  }
  std::sort(breaks.begin(), breaks.end());
  return breaks;
}

}  // namespace

TwoPhaseState::TwoPhaseState(GraphInterface f_in, GraphInterface g_in, double rb1,
                             double rb2)
    : f(std::move(f_in)), g(std::move(g_in)), rho_bar_1(rb1), rho_bar_2(rb2) {
  if (!(f.grid() == g.grid())) {
    throw Error("two-phase state requires a shared grid");
  }
  for (int i = 0; i < f.n(); ++i) {
    if (!(f.f.value(i) > g.f.value(i))) {
      throw Error("two-phase ordering violated: f must lie strictly above g");
    }
  }
}

double TwoPhaseState::min_separation() const {
  double m = f.f.value(0) - g.f.value(0);
  for (int i = 1; i < f.n(); ++i) m = std::min(m, f.f.value(i) - g.f.value(i));
  return m;
}

RealLineGraph RealLineGraph::uniform(double L, int n, const std::vector<double>& values) {
  RealLineGraph g;
  g.x.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g.x[static_cast<std::size_t>(i)] = -L + 2.0 * L * i / (n - 1);
  }
  g.f = values;
  if (g.f.size() != g.x.size()) throw Error("realline graph size mismatch");
  return g;
}

namespace {

// One target node of I[u, v]. The kernel keeps the tan/tanh form of the
// interaction integral; the cot rewrite takes over for |beta| > pi/2 where
// tan(beta/2) grows without bound.
struct InteractionNode {
  double alpha;
  double ua;        // u(alpha)
  double dua;       // u'(alpha) through the spline
  double a0;        // even window limit for the self case
};

double interaction_kernel(double beta, double delta, double num) {
  const double hh = std::tanh(0.5 * delta);
  const double h2 = hh * hh;
  double k;
  if (std::fabs(beta) <= 0.5 * kPi) {
    const double t = std::tan(0.5 * beta);
    const double den = t * t + h2;
    if (den < kDenomFloor) {
      throw NearTouching("interaction kernel denominator below floor",
                         std::fabs(delta));
    }
    k = t * (1.0 - h2) / den;
  } else {
    const double w = std::cos(0.5 * beta) / std::sin(0.5 * beta);
    const double den = 1.0 + w * w * h2;
    k = w * (1.0 - h2) / den;
  }
  return num * k;
}

}  // namespace

PeriodicField interaction_rhs(const PeriodicField& u, const PeriodicField& v,
                              const QuadratureSpec& spec) {
  spec.validate();
  if (!(u.grid() == v.grid())) {
    throw Error("interaction_rhs requires a shared grid");
  }
  const PeriodicGrid& grid = u.grid();
  const int n = grid.n();
  const bool self = (&u == &v) || (u.values() == v.values());

  const PeriodicSpline su(grid, u.values());
  const PeriodicSpline sv = self ? su : PeriodicSpline(grid, v.values());

  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const std::vector<double> uniform_breaks =
      grid.uniform() ? shared_knot_breaks(grid) : std::vector<double>();
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const double alpha = grid.alpha(static_cast<int>(idx));
    double ua, dua, d2ua;
    su.eval_all(alpha, ua, dua, d2ua);
    const std::vector<double> breaks =
        grid.uniform() ? uniform_breaks : knot_breaks(grid, alpha);

    const auto integrand = [&](double beta) -> double {
      double vb, dvb;
      sv.eval_with_derivative(alpha - beta, vb, dvb);
      return interaction_kernel(beta, ua - vb, dua - dvb);
    };

    const double h = spec.local_window;
    double value;
    if (self) {
      double left = 0.0, right = 0.0;
      integrate_adaptive<double>(integrand, -kPi, -h, spec, &left, &breaks);
      integrate_adaptive<double>(integrand, h, kPi, spec, &right, &breaks);
      const std::optional<double> a0 = 2.0 * d2ua / (1.0 + dua * dua);
      value = left + right + window_integral<double>(integrand, h, a0);
    } else {
      double full = 0.0;
      integrate_adaptive<double>(integrand, -kPi, kPi, spec, &full, &breaks);
      value = full;
    }
    out[idx] = value;
  });
  return PeriodicField(grid, std::move(out));
}

PeriodicField single_graph_rhs(const PeriodicField& f, double rho_bar,
                               const QuadratureSpec& spec) {
  PeriodicField i = interaction_rhs(f, f, spec);
  std::vector<double> out = i.values();
  for (double& v : out) v *= rho_bar;
  return PeriodicField(f.grid(), std::move(out));
}

TwoPhaseRhs two_phase_rhs(const TwoPhaseState& state, const QuadratureSpec& spec) {
  const PeriodicGrid& grid = state.grid();
  const int n = grid.n();
  const double sep = state.min_separation();

  std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
  auto scaled = [&](const PeriodicField& a, double ca, const PeriodicField& b,
                    double cb) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = ca * a.value(i) + cb * b.value(i);
    }
    return PeriodicField(grid, std::move(out));
  };

  const PeriodicField zero_field(grid, zeros);
  const bool need1 = state.rho_bar_1 != 0.0;
  const bool need2 = state.rho_bar_2 != 0.0;
  const PeriodicField iff = need1 ? interaction_rhs(state.f.f, state.f.f, spec) : zero_field;
  const PeriodicField ifg = need2 ? interaction_rhs(state.f.f, state.g.f, spec) : zero_field;
  const PeriodicField igg = need2 ? interaction_rhs(state.g.f, state.g.f, spec) : zero_field;
  const PeriodicField igf = need1 ? interaction_rhs(state.g.f, state.f.f, spec) : zero_field;

  TwoPhaseRhs rhs{scaled(iff, state.rho_bar_1, ifg, state.rho_bar_2),
                  scaled(igg, state.rho_bar_2, igf, state.rho_bar_1),
                  std::nullopt};
  if (sep < 1e-3) rhs.near_touch_warning = sep;
  return rhs;
}

ContourRhs contour_rhs_periodic(const Curve& curve, const QuadratureSpec& spec) {
  spec.validate();
  const PeriodicGrid& grid = curve.grid();
  const int n = grid.n();
  const PeriodicSpline s1(grid, curve.z1_minus_alpha.values());
  const PeriodicSpline s2(grid, curve.z2.values());
  const double h = spec.local_window;
  const double prefactor = curve.delta_rho / (4.0 * kPi);

  std::vector<double> out1(static_cast<std::size_t>(n), 0.0);
  std::vector<double> out2(static_cast<std::size_t>(n), 0.0);
  const std::vector<double> uniform_breaks =
      grid.uniform() ? shared_knot_breaks(grid) : std::vector<double>();

  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const double alpha = grid.alpha(static_cast<int>(idx));
    double s1a, ds1a, d2s1a, z2a, dz2a, d2z2a;
    s1.eval_all(alpha, s1a, ds1a, d2s1a);
    s2.eval_all(alpha, z2a, dz2a, d2z2a);
    const double dz1a = 1.0 + ds1a;

    const auto integrand = [&](double beta) -> Vec2 {
      const double ev = alpha - beta;
      double s1b, ds1b, z2b, dz2b;
      s1.eval_with_derivative(ev, s1b, ds1b);
      s2.eval_with_derivative(ev, z2b, dz2b);
      const double d1 = beta + s1a - s1b;
      const double d2 = z2a - z2b;
      const double denom = cosh_minus_cos(d2, d1);
      if (!(denom > kDenomFloor)) {
        if (std::fabs(beta) > 1e-6) {
          throw ArcChordViolation("contour kernel denominator below floor", alpha,
                                  beta);
        }
        return Vec2(0.0, 0.0);
      }
      const double sn = std::sin(d1);
      return Vec2(sn * ((dz1a - (1.0 + ds1b)) / denom),
                  sn * ((dz2a - dz2b) / denom));
    };

    const double mag2 = dz1a * dz1a + dz2a * dz2a;
    const Vec2 a0(2.0 * dz1a * d2s1a / mag2, 2.0 * dz1a * d2z2a / mag2);
    const std::vector<double>& breaks =
        grid.uniform() ? uniform_breaks : knot_breaks(grid, alpha);

    Vec2 left{}, right{};
    integrate_adaptive<Vec2>(integrand, -kPi, -h, spec, &left, &breaks);
    integrate_adaptive<Vec2>(integrand, h, kPi, spec, &right, &breaks);
    const Vec2 window = window_integral<Vec2>(integrand, h, std::optional<Vec2>(a0));
    out1[idx] = prefactor * (left.x + right.x + window.x);
    out2[idx] = prefactor * (left.y + right.y + window.y);
  });

  return ContourRhs{PeriodicField(grid, std::move(out1)),
                    PeriodicField(grid, std::move(out2))};
}

RealLineRhs graph_rhs_realline(const RealLineGraph& graph, double delta_rho,
                               const QuadratureSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(graph.x.size());
  const double L = graph.half_length();
  const NaturalSpline sf(graph.x, graph.f);
  const double h = spec.local_window;

  RealLineRhs rhs;
  rhs.f_t.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    const double xi = std::fabs(graph.x[static_cast<std::size_t>(i)]);
    if (xi > 0.5 * L) {
      const double fv = std::fabs(graph.f[static_cast<std::size_t>(i)]);
      const double dv = std::fabs(sf.derivative(graph.x[static_cast<std::size_t>(i)]));
      if (fv > 1e-8 || dv > 1e-8) {
        rhs.truncation_warning = true;
        break;
      }
    }
  }

  const double scale = delta_rho / (2.0 * kPi);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
    const double alpha = graph.x[idx];
    double fa, dfa;
    sf.eval_with_derivative(alpha, fa, dfa);
    const double d2fa = sf.second_derivative(alpha);

    // centered variable u = alpha - beta; rounding can push alpha - u a hair
    // past the truncation, where the clamp would jump the derivative
    const auto integrand = [&](double u) -> double {
      double xe = alpha - u;
      if (xe > L) xe = L;
      if (xe < -L) xe = -L;
      double fb, dfb;
      sf.eval_with_derivative(xe, fb, dfb);
      const double df = fa - fb;
      return u * (dfa - dfb) / (u * u + df * df);
    };

    const double lo = alpha - L;
    const double hi = alpha + L;
    std::vector<double> breaks(graph.x.size());
    for (std::size_t j = 0; j < graph.x.size(); ++j) breaks[j] = alpha - graph.x[j];
    double total = 0.0;
    if (lo < -h) total += integrate_interval(integrand, lo, -h, spec, &breaks).value;
    if (hi > h) total += integrate_interval(integrand, h, hi, spec, &breaks).value;
    const std::optional<double> a0 = d2fa / (1.0 + dfa * dfa);
    total += window_integral<double>(integrand, h, a0);

    // flat tails beyond the truncation, paired principal-value closed form
    const double la = L - alpha;
    const double lb = L + alpha;
    total += dfa * 0.5 * std::log((la * la + fa * fa) / (lb * lb + fa * fa));

    rhs.f_t[idx] = scale * total;
  });
  return rhs;
}

double dalpha_velocity1(const Curve& curve, double alpha0, const QuadratureSpec& spec) {
  spec.validate();
  const PeriodicGrid& grid = curve.grid();
  const PeriodicSpline s1(grid, curve.z1_minus_alpha.values());
  const PeriodicSpline s2(grid, curve.z2.values());

  double s1a, ds1a, d2s1a, z2a, dz2a, d2z2a;
  s1.eval_all(alpha0, s1a, ds1a, d2s1a);
  s2.eval_all(alpha0, z2a, dz2a, d2z2a);
  const double dz1a = 1.0 + ds1a;
  if (std::fabs(dz1a) < 1e-6) {
    throw UseReducida(
        "vertical tangent at alpha0: use the reduced integral for (d_a v1)(0)");
  }
  const std::vector<double> breaks = knot_breaks(grid, alpha0);

  const auto integrand = [&](double beta) -> double {
    const double ev = alpha0 - beta;
    double s1b, ds1b, d2s1b, z2b, dz2b, d2z2b;
    s1.eval_all(ev, s1b, ds1b, d2s1b);
    s2.eval_all(ev, z2b, dz2b, d2z2b);
    const double d1 = beta + s1a - s1b;
    const double d2 = z2a - z2b;
    if (std::fabs(d2) > 350.0) return 0.0;  // kernel is exponentially dead
    const double q = cosh_minus_cos(d2, d1);
    if (!(q > kDenomFloor) && std::fabs(beta) > 1e-6) {
      throw ArcChordViolation("velocity-derivative kernel denominator below floor",
                              alpha0, beta);
    }
    const double sd1 = std::sin(d1);
    const double n1 = dz1a - (1.0 + ds1b);
    const double n2 = dz2a - dz2b;
    const double m1 = d2s1a - d2s1b;
    const double first = std::cos(d1) * n1 * n1 + sd1 * m1;
    const double second = sd1 * n1 * (std::sinh(d2) * n2 + sd1 * n1);
    return first / q - second / (q * q);
  };

  LocalModel local;  // even limit extracted from symmetric probes
  const double pv = pv_integral(integrand, local, spec, &breaks);
  return (curve.delta_rho / (4.0 * kPi)) * pv;
}

}  // namespace muskat
