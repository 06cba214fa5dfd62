#pragma once

#include <utility>

#include "muskat/grid.hpp"

namespace muskat {

// Parametrized interface z(a) = (a + s1(a), z2(a)) with s1, z2 periodic, plus
// the density jump rho^2 - rho^1 across it (4 pi under the paper's
// normalization).
struct Curve {
  PeriodicField z1_minus_alpha;
  PeriodicField z2;
  double delta_rho = 4.0 * kPi;

  Curve(PeriodicField z1ma, PeriodicField z2_in, double delta_rho_in = 4.0 * kPi);

  const PeriodicGrid& grid() const { return z1_minus_alpha.grid(); }
  int n() const { return grid().n(); }

  // Full first coordinate at node i.
  double z1_at(int i) const { return grid().alpha(i) + z1_minus_alpha.value(i); }

  static Curve flat(int n, double delta_rho = 4.0 * kPi, double height = 0.0);
  // Lift of a graph: z = (a, f(a)).
  static Curve from_graph(const PeriodicField& f, double delta_rho = 4.0 * kPi);
};

// Single periodic interface in graph form, with its conserved mean height.
struct GraphInterface {
  PeriodicField f;
  double mean = 0.0;

  explicit GraphInterface(PeriodicField f_in);
  const PeriodicGrid& grid() const { return f.grid(); }
  int n() const { return f.n(); }
};

// Sampled derivative d^order/da^order. Uniform grids differentiate spectrally
// (exact for trigonometric polynomials of degree < n/2); nonuniform grids use
// the periodic cubic spline derivative. order in {1, 2}.
PeriodicField differentiate(const PeriodicField& field, int order);

// Node derivatives of the full first coordinate z1 (includes the linear part).
std::vector<double> curve_dz1(const Curve& curve);
std::vector<double> curve_dz2(const Curve& curve);

// Sup over distinct node pairs and the diagonal limit of
//   F(z)(a, b) = ||b||^2 / (2 (cosh(z2(a)-z2(a-b)) - cos(z1(a)-z1(a-b)))),
// with ||.|| the distance to 2 pi Z. Throws ArcChordViolation when a
// denominator falls below the floor (coincident points).
double arc_chord_constant(const Curve& curve);

// sigma(a) = delta_rho * d_a z1(a), the Rayleigh-Taylor profile.
PeriodicField rayleigh_taylor_profile(const Curve& curve);

// omega(a) = -delta_rho * d_a z2(a), the vorticity strength.
PeriodicField vorticity_strength(const Curve& curve);

// (min over nodes of d_a z1, its argmin alpha). The monitored turnover
// quantity.
std::pair<double, double> min_slope(const Curve& curve);

}  // namespace muskat
