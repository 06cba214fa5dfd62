#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <type_traits>
#include <vector>

#include "muskat/errors.hpp"
#include "muskat/grid.hpp"

namespace muskat {

// Singular-integral settings. local_window is the half-width of the
// symmetric window around beta = 0 handled by the local polynomial model;
// taylor_order is the degree of that polynomial.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double local_window = kPi / 64.0;
  int taylor_order = 4;

  void validate() const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated error estimate (rule difference sums)
};

// Two-component value for kernels that produce both components of a curve
// velocity in a single sweep.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  Vec2() = default;
  Vec2(double x, double y) : x(x), y(y) {}
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2 operator*(double c) const { return {x * c, y * c}; }
  friend Vec2 operator*(double c, const Vec2& v) { return v * c; }
};
inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const Vec2& v) { return std::fabs(v.x) + std::fabs(v.y); }

namespace detail {

// Gander-Gautschi adaptive Gauss-Lobatto(4) / Kronrod(7) scheme. The 7-point
// rule is the returned value; the rule difference drives refinement.
// Integration runs in two phases: a base pass over the caller's segments
// (aligned with the integrand's smoothness breaks, e.g. spline knots), which
// fixes the acceptance scale, then refinement of the offending segments.
// Templated on the integrand value type (double or Vec2).
template <typename F, typename V>
struct AdaptiveLobatto {
  const F& f;
  double tol_per_len = 0.0;  // accepted error per unit length
  double length_floor = 0.0;
  int max_depth = 48;
  long max_evals = 8'000'000;
  long evals = 0;
  double worst_a = 0.0, worst_b = 0.0, worst_err = 0.0;

  static constexpr double kAlpha = 0.81649658092772603273;  // sqrt(2/3)
  static constexpr double kBeta = 0.44721359549995793928;   // 1/sqrt(5)

  struct Panel {
    double a, b;
    V fv[7];  // values at a, mll, ml, m, mr, mrr, b
    V i1;     // 7-point Kronrod
    double diff;  // |i1 - i2|
  };

  V eval(double x) {
    ++evals;
    return f(x);
  }

  void fill(Panel& p) {
    const double m = 0.5 * (p.a + p.b);
    const double h = 0.5 * (p.b - p.a);
    p.fv[1] = eval(m - kAlpha * h);
    p.fv[2] = eval(m - kBeta * h);
    p.fv[3] = eval(m);
    p.fv[4] = eval(m + kBeta * h);
    p.fv[5] = eval(m + kAlpha * h);
    const V i2 = (h / 6.0) * (p.fv[0] + p.fv[6] + 5.0 * (p.fv[2] + p.fv[4]));
    p.i1 = (h / 1470.0) * (77.0 * (p.fv[0] + p.fv[6]) + 432.0 * (p.fv[1] + p.fv[5]) +
                           625.0 * (p.fv[2] + p.fv[4]) + 672.0 * p.fv[3]);
    p.diff = magnitude(p.i1 - i2);
  }

  V refine(const Panel& p, int depth, QuadResult& err_acc) {
    const double budget = tol_per_len * (p.b - p.a);
    if (p.diff <= budget || depth >= max_depth || (p.b - p.a) <= length_floor) {
      if (p.diff > budget && p.diff > worst_err) {
        worst_err = p.diff;
        worst_a = p.a;
        worst_b = p.b;
      }
      err_acc.error += p.diff;
      return p.i1;
    }
    if (evals > max_evals) {
      throw QuadratureNonconvergence(
          "adaptive Lobatto exceeded its evaluation budget", p.a, p.b, p.diff);
    }
    const double m = 0.5 * (p.a + p.b);
    const double h = 0.5 * (p.b - p.a);
    const double xs[7] = {p.a,          m - kAlpha * h, m - kBeta * h, m,
                          m + kBeta * h, m + kAlpha * h, p.b};
    V total{};
    for (int c = 0; c < 6; ++c) {
      Panel child;
      child.a = xs[c];
      child.b = xs[c + 1];
      child.fv[0] = p.fv[c];
      child.fv[6] = p.fv[c + 1];
      fill(child);
      total += refine(child, depth + 1, err_acc);
    }
    return total;
  }
};

}  // namespace detail

// Adaptive integral over [a, b], with optional interior breakpoints marking
// where the integrand loses smoothness (spline knots). The signed value lands
// in value_out (and, for scalar integrands, in QuadResult::value).
template <typename V = double, typename F>
QuadResult integrate_adaptive(const F& f, double a, double b, const QuadratureSpec& spec,
                              V* value_out = nullptr,
                              const std::vector<double>* interior_breaks = nullptr) {
  spec.validate();
  QuadResult r;
  if (!(b > a)) {
    if (value_out) *value_out = V{};
    return r;
  }
  using Engine = detail::AdaptiveLobatto<F, V>;
  Engine engine{f};
  std::vector<double> cuts;
  cuts.push_back(a);
  if (interior_breaks) {
    for (double x : *interior_breaks) {
      if (x > a + 1e-15 && x < b - 1e-15) cuts.push_back(x);
    }
    std::sort(cuts.begin() + 1, cuts.end());
  }
  cuts.push_back(b);

  std::vector<typename Engine::Panel> panels(cuts.size() - 1);
  V endpoint = engine.eval(cuts[0]);
  V q0{};
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    panels[s].a = cuts[s];
    panels[s].b = cuts[s + 1];
    panels[s].fv[0] = endpoint;
    panels[s].fv[6] = engine.eval(cuts[s + 1]);
    endpoint = panels[s].fv[6];
    engine.fill(panels[s]);
    q0 += panels[s].i1;
  }
  const double scale = std::max(spec.abs_tol, spec.rel_tol * magnitude(q0));
  engine.tol_per_len = scale / (b - a);
  engine.length_floor = 1e-12 * (b - a);

  V total{};
  QuadResult err_acc;
  for (auto& p : panels) total += engine.refine(p, 0, err_acc);
  if (err_acc.error > 100.0 * scale) {
    throw QuadratureNonconvergence(
        "adaptive Lobatto could not meet the requested tolerance",
        engine.worst_a, engine.worst_b, engine.worst_err);
  }
  if (value_out) *value_out = total;
  if constexpr (std::is_same_v<V, double>) {
    r.value = total;
  }
  r.error = err_acc.error;
  return r;
}

// Scalar convenience wrapper.
QuadResult integrate_interval(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& spec,
                              const std::vector<double>* interior_breaks = nullptr);

// Local model of an integrand near beta = 0 on (-h, h):
//   integrand(beta) = cot_coeff * cot(beta/2) + R(beta),
// where R is smooth. The symmetric window integral of the cot term is exactly
// zero (that is the principal value); R is integrated by its even Taylor
// polynomial. even_limit, when present, is R(0); otherwise it is obtained by
// Richardson extrapolation from symmetric probes of the integrand itself.
// Explicit even Taylor coefficients may be supplied instead of probing.
struct LocalModel {
  double cot_coeff = 0.0;
  std::optional<double> even_limit;           // a0 = R(0)
  std::optional<std::vector<double>> even_taylor;  // {a0, a2, a4, ...}
};

// PV integral over [-pi, pi] of an integrand with an odd-type singularity at
// beta = 0, per the window/outer split described above. Returns the value;
// the detailed variant also reports the accumulated error estimate.
QuadResult pv_integral_detailed(const std::function<double(double)>& integrand,
                                const LocalModel& local, const QuadratureSpec& spec,
                                const std::vector<double>* interior_breaks = nullptr);
double pv_integral(const std::function<double(double)>& integrand,
                   const LocalModel& local, const QuadratureSpec& spec,
                   const std::vector<double>* interior_breaks = nullptr);
// No-singularity path: plain adaptive integral over [-pi, pi].
double pv_integral(const std::function<double(double)>& integrand,
                   const QuadratureSpec& spec,
                   const std::vector<double>* interior_breaks = nullptr);

// Window integral helper shared by the Vec2 kernels in dynamics: integrates
// the even part of `integrand` over (-h, h) by the probed polynomial model.
// Probes at h, h/2 (and h/4 when the limit is extrapolated).
template <typename V, typename F>
V window_integral(const F& integrand, double h, const std::optional<V>& even_limit) {
  const auto even = [&](double b) -> V { return 0.5 * (integrand(b) + integrand(-b)); };
  V a0{};
  V e1 = even(h);
  V e2 = even(0.5 * h);
  if (even_limit) {
    a0 = *even_limit;
  } else {
    V e3 = even(0.25 * h);
    // Fit a0 + a2 b^2 + a4 b^4 through (h, h/2, h/4); closed-form elimination.
    // a0 = (64 e3 - 20 e2 + e1) / 45.
    a0 = (1.0 / 45.0) * (64.0 * e3 - 20.0 * e2 + e1);
  }
  // With a0 fixed, fit a2, a4 from probes at h and h/2:
  //   a2 h^2 + a4 h^4 = e1 - a0
  //   a2 h^2/4 + a4 h^4/16 = e2 - a0
  V d1 = e1 - a0;
  V d2 = e2 - a0;
  V a4h4 = (4.0 / 3.0) * (d1 - 4.0 * d2);
  V a2h2 = d1 - a4h4;
  // integral of a0 + a2 b^2 + a4 b^4 over (-h, h)
  return 2.0 * h * a0 + (2.0 * h / 3.0) * a2h2 + (2.0 * h / 5.0) * a4h4;
}

// ---- Spectral operators ----

// H multiplies mode A_k by -i sgn(k); fixed so that H(cos k a) = sin(k a).
PeriodicField hilbert_transform(const PeriodicField& field);

// Lambda^s multiplies A_k by |k|^s; s in {1/2, 1}.
PeriodicField lambda_op(const PeriodicField& field, double s);

// Pointwise minimum over nodes of 2 g Lambda(g) - Lambda(g^2); requires g to
// be resolved to degree <= n/4 so that g^2 is alias-free.
double ad_inequality_margin(const PeriodicField& g);

}  // namespace muskat
