#include "muskat/curve.hpp"

#include <cmath>

#include "muskat/errors.hpp"
#include "muskat/spline.hpp"

namespace muskat {

Curve::Curve(PeriodicField z1ma, PeriodicField z2_in, double delta_rho_in)
    : z1_minus_alpha(std::move(z1ma)), z2(std::move(z2_in)), delta_rho(delta_rho_in) {
  if (!(z1_minus_alpha.grid() == z2.grid())) {
    throw Error("curve components must share one grid");
  }
}

Curve Curve::flat(int n, double delta_rho, double height) {
  PeriodicGrid grid = PeriodicGrid::uniform(n);
  std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
  std::vector<double> h(static_cast<std::size_t>(n), height);
  return Curve(PeriodicField(grid, zeros), PeriodicField(grid, h), delta_rho);
}

Curve Curve::from_graph(const PeriodicField& f, double delta_rho) {
  std::vector<double> zeros(f.values().size(), 0.0);
  return Curve(PeriodicField(f.grid(), zeros), f, delta_rho);
}

GraphInterface::GraphInterface(PeriodicField f_in) : f(std::move(f_in)) {
  for (double v : f.values()) {
    if (!std::isfinite(v)) throw Error("graph values must be finite");
  }
  PeriodicSpline s(f.grid(), f.values());
  mean = s.period_integral() / kTwoPi;
}

PeriodicField differentiate(const PeriodicField& field, int order) {
  if (order != 1 && order != 2) throw Error("differentiate supports order 1 or 2 only");
  const PeriodicGrid& grid = field.grid();
  if (grid.uniform() && grid.n() % 2 == 0) {
    const Spectrum& s = field.spectrum();
    Spectrum out = s;
    out.a0 = 0.0;
    for (std::size_t j = 0; j < s.cos_coeff.size(); ++j) {
      const double k = static_cast<double>(j + 1);
      if (order == 1) {
        out.cos_coeff[j] = k * s.sin_coeff[j];
        out.sin_coeff[j] = -k * s.cos_coeff[j];
      } else {
        out.cos_coeff[j] = -k * k * s.cos_coeff[j];
        out.sin_coeff[j] = -k * k * s.sin_coeff[j];
      }
    }
    const double nyq = static_cast<double>(s.n / 2);
    out.nyquist = (order == 1) ? 0.0 : -nyq * nyq * s.nyquist;
    return PeriodicField::from_spectrum(grid, out);
  }
  PeriodicSpline s(grid, field.values());
  std::vector<double> out(field.values().size());
  for (int i = 0; i < grid.n(); ++i) {
    out[static_cast<std::size_t>(i)] = (order == 1) ? s.derivative(grid.alpha(i))
                                                    : s.second_derivative(grid.alpha(i));
  }
  return PeriodicField(grid, std::move(out));
}

std::vector<double> curve_dz1(const Curve& curve) {
  PeriodicField d = differentiate(curve.z1_minus_alpha, 1);
  std::vector<double> out = d.values();
  for (double& v : out) v += 1.0;
  return out;
}

std::vector<double> curve_dz2(const Curve& curve) {
  return differentiate(curve.z2, 1).values();
}

double arc_chord_constant(const Curve& curve) {
  const PeriodicGrid& grid = curve.grid();
  const int n = grid.n();
  const auto& s1 = curve.z1_minus_alpha.values();
  const auto& z2 = curve.z2.values();
  constexpr double kFloor = 1e-14;

  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double beta = grid.alpha(i) - grid.alpha(j);
      const double dz1 = beta + s1[static_cast<std::size_t>(i)] - s1[static_cast<std::size_t>(j)];
      const double dz2 = z2[static_cast<std::size_t>(i)] - z2[static_cast<std::size_t>(j)];
      // cosh(dz2) - cos(dz1), cancellation-free
      const double sh = std::sinh(0.5 * dz2);
      const double sn = std::sin(0.5 * dz1);
      const double denom = 2.0 * (sh * sh + sn * sn);
      const double nb = std::fabs(wrap_angle(beta));
      if (!(denom > kFloor)) {
        throw ArcChordViolation("arc-chord denominator vanished (self-intersection?)",
                                grid.alpha(i), beta);
      }
      sup = std::max(sup, nb * nb / (2.0 * denom));
    }
  }
  // diagonal limit: 1 / |d_a z|^2 per node
  const std::vector<double> dz1 = curve_dz1(curve);
  const std::vector<double> dz2 = curve_dz2(curve);
  for (int i = 0; i < n; ++i) {
    const double mag2 = dz1[static_cast<std::size_t>(i)] * dz1[static_cast<std::size_t>(i)] +
                        dz2[static_cast<std::size_t>(i)] * dz2[static_cast<std::size_t>(i)];
    if (!(mag2 > kFloor)) {
      throw ArcChordViolation("degenerate parametrization: |d_a z| ~ 0",
                              grid.alpha(i), 0.0);
    }
    sup = std::max(sup, 1.0 / mag2);
  }
  return sup;
}

PeriodicField rayleigh_taylor_profile(const Curve& curve) {
  std::vector<double> sigma = curve_dz1(curve);
  for (double& v : sigma) v *= curve.delta_rho;
  return PeriodicField(curve.grid(), std::move(sigma));
}

PeriodicField vorticity_strength(const Curve& curve) {
  std::vector<double> w = curve_dz2(curve);
  for (double& v : w) v *= -curve.delta_rho;
  return PeriodicField(curve.grid(), std::move(w));
}

std::pair<double, double> min_slope(const Curve& curve) {
  const std::vector<double> dz1 = curve_dz1(curve);
  int arg = 0;
  for (int i = 1; i < static_cast<int>(dz1.size()); ++i) {
    if (dz1[static_cast<std::size_t>(i)] < dz1[static_cast<std::size_t>(arg)]) arg = i;
  }
  return {dz1[static_cast<std::size_t>(arg)], curve.grid().alpha(arg)};
}

}  // namespace muskat
