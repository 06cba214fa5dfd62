#include "muskat/turnover.hpp"

#include <cmath>

#include "muskat/errors.hpp"

namespace muskat {

bool TurnoverCertificate::passed() const {
  if (!(integral_value + integral_error < 0.0)) return false;
  for (const auto& [name, ok] : conditions) {
    if (!ok) return false;
  }
  return true;
}

double z1_turning(double beta) { return beta - std::sin(beta); }

double dz1_turning(double beta) {
  const double s = std::sin(0.5 * beta);
  return 2.0 * s * s;  // 1 - cos(beta)
}

namespace {

// beta - sin(beta) without cancellation for small beta.
double z1_turning_stable(double beta) {
  if (std::fabs(beta) < 0.5) {
    const double b2 = beta * beta;
    return (beta * b2 / 6.0) *
           (1.0 - (b2 / 20.0) * (1.0 - (b2 / 42.0) * (1.0 - b2 / 72.0)));
  }
  return beta - std::sin(beta);
}

}  // namespace

double zstar_default(double beta, double beta1) {
  return std::sin(beta) * (std::cos(beta) - std::cos(beta1));
}

PeriodicField build_z1(const PeriodicGrid& grid) {
  std::vector<double> v(static_cast<std::size_t>(grid.n()));
  for (int i = 0; i < grid.n(); ++i) v[static_cast<std::size_t>(i)] = -std::sin(grid.alpha(i));
  return PeriodicField(grid, std::move(v));
}

PeriodicField build_zstar(const PeriodicGrid& grid, double beta1, double beta2) {
  if (!(0.0 < beta1 && beta1 < beta2 && beta2 < kPi)) {
    throw ConstructionError("require 0 < beta1 < beta2 < pi", "parameter-range");
  }
  const int n = grid.n();
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = zstar_default(grid.alpha(i), beta1);

  // sign conditions of the oscillation family, checked on the grid
  const double d0 = 1.0 - std::cos(beta1);  // derivative at 0
  if (!(d0 > 0.0)) throw ConstructionError("derivative at 0 not positive", "b");
  for (int i = 0; i < n; ++i) {
    const double b = grid.alpha(i);
    const double val = v[static_cast<std::size_t>(i)];
    const double ab = std::fabs(b);
    const double sval = b >= 0.0 ? val : -val;  // odd reflection to (0, pi)
    if (ab > 1e-14 && ab < beta1 - 1e-14 && !(sval > 0.0)) {
      throw ConstructionError("z* not positive on (0, beta1)", "c");
    }
    if (ab > beta1 + 1e-14 && ab <= beta2 + 1e-14 && !(sval < 0.0)) {
      throw ConstructionError("z* not negative on (beta1, beta2]", "d");
    }
    if (ab > beta2 - 1e-14 && !(sval <= 1e-14)) {
      throw ConstructionError("z* not <= 0 on [beta2, pi]", "e");
    }
  }
  // oddness on the grid (node at -pi pairs with itself)
  for (int i = 1; i < n; ++i) {
    const double a = v[static_cast<std::size_t>(i)];
    const double bmirror = v[static_cast<std::size_t>(n - i)];
    if (std::fabs(a + bmirror) > 1e-12) {
      throw ConstructionError("z* not odd on the grid", "a");
    }
    if (i == n - i) break;
  }
  return PeriodicField(grid, std::move(v));
}

PeriodicField assemble_tilde_z(const PeriodicField& zstar, double b, double beta1) {
  if (!(b > 0.0)) throw ConstructionError("b must be positive", "b-scale");
  const PeriodicGrid& grid = zstar.grid();
  std::vector<double> v = zstar.values();
  for (int i = 0; i < grid.n(); ++i) {
    if (std::fabs(grid.alpha(i)) <= beta1) v[static_cast<std::size_t>(i)] *= b;
  }
  return PeriodicField(grid, std::move(v));
}

namespace {

// sin(z1) sinh(z2) / (cosh(z2) - cos(z1))^2 * dz1, with z1 = beta - sin(beta).
// Stable at both ends: series for z1 near 0, asymptotic kernel for large z2.
double reducida_integrand(double beta, const std::function<double(double)>& z2_fn) {
  if (beta <= 0.0) return 0.0;  // O(beta^2) limit
  const double z1 = z1_turning_stable(beta);
  const double dz1 = dz1_turning(beta);
  const double z2 = z2_fn(beta);
  const double s1 = std::sin(z1);
  const double az2 = std::fabs(z2);
  if (az2 > 350.0) {
    // sinh(x)/(cosh(x)-c)^2 ~ sign(x) 2 e^{-|x|}
    const double r = (z2 > 0.0 ? 2.0 : -2.0) * std::exp(-az2);
    return s1 * r * dz1;
  }
  const double sh = std::sinh(0.5 * z2);
  const double sn = std::sin(0.5 * z1);
  const double q = 2.0 * (sh * sh + sn * sn);
  if (!(q > 0.0)) return 0.0;
  return s1 * std::sinh(z2) / (q * q) * dz1;
}

}  // namespace

ReducidaResult reducida_integral(const std::function<double(double)>& z2,
                                 double dz2_at_0, double beta1,
                                 const QuadratureSpec& spec) {
  spec.validate();
  const auto f = [&](double b) { return reducida_integrand(b, z2); };
  QuadResult inner = integrate_interval(f, 0.0, beta1, spec);
  QuadResult outer = integrate_interval(f, beta1, kPi, spec);
  ReducidaResult r;
  r.inner = inner.value;
  r.outer = outer.value;
  r.inner_error = inner.error;
  r.outer_error = outer.error;
  r.value = 2.0 * dz2_at_0 * (inner.value + outer.value);
  r.error = 2.0 * std::fabs(dz2_at_0) * (inner.error + outer.error);
  return r;
}

ReducidaResult reducida_integral(const PeriodicField& z1, const PeriodicField& z2,
                                 double dz2_at_0, const QuadratureSpec& spec,
                                 double beta1) {
  // The reduced integral assumes the lemma's first coordinate; anything else
  // would make the beta -> 0 limit nonremovable in this evaluation scheme.
  const PeriodicGrid& grid = z1.grid();
  for (int i = 0; i < grid.n(); ++i) {
    const double want = -std::sin(grid.alpha(i));
    if (std::fabs(z1.value(i) - want) > 1e-10) {
      throw Error("reducida_integral requires z1 = beta - sin(beta)");
    }
  }
  // odd z2 with a removable origin: z2(0) must vanish
  PeriodicSpline s2(z2.grid(), z2.values());
  if (std::fabs(s2.eval(0.0)) > 1e-10) {
    throw Error("reducida_integral requires odd z2 (z2(0) = 0)");
  }
  return reducida_integral([&](double b) { return s2.eval(b); }, dz2_at_0, beta1, spec);
}

double find_b(const std::function<double(double)>& zstar, double beta1,
              const QuadratureSpec& spec) {
  const auto f_outer = [&](double b) { return reducida_integrand(b, zstar); };
  QuadResult outer = integrate_interval(f_outer, beta1, kPi, spec);
  if (!(outer.value + outer.error < 0.0)) {
    throw FamilyInvalid("the (beta1, pi) contribution is not certifiably negative");
  }
  double b = 1.0;
  while (b <= 1e12) {
    const auto z2 = [&](double x) {
      return (std::fabs(x) <= beta1) ? b * zstar(x) : zstar(x);
    };
    const auto f_inner = [&](double x) { return reducida_integrand(x, z2); };
    QuadResult inner = integrate_interval(f_inner, 0.0, beta1, spec);
    if (inner.value + outer.value + inner.error + outer.error < 0.0) return b;
    b *= 2.0;
  }
  throw SearchFailure("b-doubling exceeded 1e12 without certifying a negative integral");
}

double find_b(double beta1, double beta2, const QuadratureSpec& spec) {
  if (!(0.0 < beta1 && beta1 < beta2 && beta2 < kPi)) {
    throw ConstructionError("require 0 < beta1 < beta2 < pi", "parameter-range");
  }
  return find_b([beta1](double b) { return zstar_default(b, beta1); }, beta1, spec);
}

PeriodicField analytic_smooth(const PeriodicField& tilde_z, int n_modes, bool taper) {
  const PeriodicGrid& grid = tilde_z.grid();
  if (!grid.uniform()) throw UnsupportedGrid("analytic_smooth requires a uniform grid");
  const Spectrum& s = tilde_z.spectrum();
  const int kmax = std::min(n_modes, s.max_mode() - 1);
  Spectrum out;
  out.n = s.n;
  out.a0 = 0.0;
  out.nyquist = 0.0;
  out.cos_coeff.assign(s.cos_coeff.size(), 0.0);
  out.sin_coeff.assign(s.sin_coeff.size(), 0.0);
  const int k0 = static_cast<int>(std::ceil(0.8 * n_modes));
  for (int k = 1; k <= kmax; ++k) {
    double w = 1.0;
    if (taper && k > k0) {
      w = 0.5 * (1.0 + std::cos(kPi * (k - k0) / (n_modes + 1 - k0)));
    }
    // sine modes only: the output stays exactly odd
    out.sin_coeff[static_cast<std::size_t>(k - 1)] =
        w * s.sin_coeff[static_cast<std::size_t>(k - 1)];
  }
  return PeriodicField::from_spectrum(grid, out);
}

namespace {

struct SineSeries {
  std::vector<double> coeff;  // coeff[k-1] multiplies sin(k beta)
  double operator()(double beta) const {
    double v = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      if (coeff[k] != 0.0) v += coeff[k] * std::sin((k + 1) * beta);
    }
    return v;
  }
  double derivative_at_0() const {
    double v = 0.0;
    for (std::size_t k = 0; k < coeff.size(); ++k) v += (k + 1) * coeff[k];
    return v;
  }
};

}  // namespace

std::pair<Curve, TurnoverCertificate> construct_turning_datum(
    double beta1, double beta2, int n_modes, const QuadratureSpec& spec, int grid_n) {
  PeriodicGrid grid = PeriodicGrid::uniform(grid_n);
  PeriodicField z1ma = build_z1(grid);
  PeriodicField zstar = build_zstar(grid, beta1, beta2);
  const double b = find_b(beta1, beta2, spec);
  PeriodicField tilde = assemble_tilde_z(zstar, b, beta1);

  const int mode_cap = grid_n / 2 - 1;
  for (int m = n_modes; m <= mode_cap; m *= 2) {
    PeriodicField z2 = analytic_smooth(tilde, m);
    SineSeries series{z2.spectrum().sin_coeff};
    const double dz2_0 = series.derivative_at_0();

    TurnoverCertificate cert;
    cert.beta1 = beta1;
    cert.beta2 = beta2;
    cert.b = b;
    cert.n_modes = m;
    cert.dz2_at_0 = dz2_0;

    cert.conditions["odd"] = true;  // sine-only construction
    cert.conditions["slope_zero_at_0"] = dz1_turning(0.0) == 0.0;
    bool positive_away = true;
    for (int i = 0; i < grid.n(); ++i) {
      const double a = grid.alpha(i);
      if (std::fabs(a) > 1e-14 && !(dz1_turning(a) > 0.0)) positive_away = false;
    }
    cert.conditions["slope_positive_away_from_0"] = positive_away;
    cert.conditions["dz2_positive_at_0"] = dz2_0 > 0.0;

    Curve curve(z1ma, z2, 4.0 * kPi);
    bool arc_ok = true;
    try {
      arc_chord_constant(curve);
    } catch (const ArcChordViolation&) {
      arc_ok = false;
    }
    cert.conditions["arc_chord_finite"] = arc_ok;

    ReducidaResult red = reducida_integral(series, dz2_0, beta1, spec);
    cert.integral_value = red.value;
    cert.integral_error = red.error;

    if (cert.passed()) return {curve, cert};
    if (2 * m > mode_cap) break;
  }
  throw IncreaseModes(
      "smoothing lost the certificate up to the grid's mode capacity; "
      "increase n_modes or the grid size");
}

std::optional<TurnoverEvent> detect_turnover(const Trajectory<Curve>& trajectory) {
  const auto& snaps = trajectory.snapshots;
  if (snaps.size() < 2) return std::nullopt;
  constexpr double kTol = 1e-10;
  std::vector<double> mins(snaps.size());
  for (std::size_t i = 0; i < snaps.size(); ++i) mins[i] = min_slope(snaps[i].second).first;

  for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
    if (mins[i] >= -kTol && mins[i + 1] < -kTol) {
      // bisection on linear-in-time interpolation of the stored states
      const Curve& ca = snaps[i].second;
      const Curve& cb = snaps[i + 1].second;
      const double ta = snaps[i].first;
      const double tb = snaps[i + 1].first;
      if (!(ca.grid() == cb.grid())) {
        return TurnoverEvent{tb, min_slope(cb).second};  // grid changed; no refinement
      }
      const auto interpolated = [&](double theta) {
        std::vector<double> v1(static_cast<std::size_t>(ca.n()));
        std::vector<double> v2(static_cast<std::size_t>(ca.n()));
        for (int j = 0; j < ca.n(); ++j) {
          v1[static_cast<std::size_t>(j)] = (1.0 - theta) * ca.z1_minus_alpha.value(j) +
                                            theta * cb.z1_minus_alpha.value(j);
          v2[static_cast<std::size_t>(j)] =
              (1.0 - theta) * ca.z2.value(j) + theta * cb.z2.value(j);
        }
        return Curve(PeriodicField(ca.grid(), std::move(v1)),
                     PeriodicField(ca.grid(), std::move(v2)), ca.delta_rho);
      };
      double lo = 0.0, hi = 1.0;
      while ((hi - lo) * (tb - ta) > std::max(1e-12, 1e-6 * (tb - ta))) {
        const double mid = 0.5 * (lo + hi);
        if (min_slope(interpolated(mid)).first < -kTol) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      const Curve at_hi = interpolated(hi);
      return TurnoverEvent{ta + hi * (tb - ta), min_slope(at_hi).second};
    }
  }
  return std::nullopt;
}

}  // namespace muskat
