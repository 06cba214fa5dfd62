#pragma once

#include <map>
#include <optional>
#include <string>

#include "muskat/curve.hpp"
#include "muskat/evolve.hpp"
#include "muskat/quadrature.hpp"

namespace muskat {

// Certified construction record for the turning initial datum. The integral
// value is (d_a v1)(0) under the delta_rho = 4 pi normalization.
struct TurnoverCertificate {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double b = 0.0;
  int n_modes = 0;
  double integral_value = 0.0;
  double integral_error = 0.0;
  double dz2_at_0 = 0.0;
  std::map<std::string, bool> conditions;

  bool passed() const;
};

// z1 - a samples for z1(b) = b - sin(b).
PeriodicField build_z1(const PeriodicGrid& grid);

// Default oscillation family z*(b) = sin(b) (cos b - cos beta1); validates
// the lemma's sign conditions on the grid and throws ConstructionError naming
// the first violated one.
PeriodicField build_zstar(const PeriodicGrid& grid, double beta1, double beta2);

// Piecewise scaling: b z*(b) for |b| <= beta1, z*(b) outside.
PeriodicField assemble_tilde_z(const PeriodicField& zstar, double b, double beta1);

// Closed-form evaluators mirroring the fields above; the quadrature paths use
// these (plus the sine-series form after smoothing) so the integrand can be
// sampled at arbitrary beta without interpolation error.
double z1_turning(double beta);           // beta - sin(beta)
double dz1_turning(double beta);          // 1 - cos(beta)
double zstar_default(double beta, double beta1);

// The reduced integral
//   (d_a v1)(0) = 2 dz2(0) int_0^pi sin(z1) sinh(z2) / (cosh(z2)-cos(z1))^2 dz1' db
// for odd z1, z2 with a vertical tangent at 0. z2 is supplied as a callable
// so both the piecewise pre-smoothing form and the sine series can feed it.
struct ReducidaResult {
  double value = 0.0;   // full (d_a v1)(0), prefactor included
  double error = 0.0;   // quadrature error bound on the same quantity
  double inner = 0.0;   // int over (0, beta1), prefactor excluded
  double outer = 0.0;   // int over (beta1, pi), prefactor excluded
  double inner_error = 0.0;
  double outer_error = 0.0;
};
ReducidaResult reducida_integral(const std::function<double(double)>& z2,
                                 double dz2_at_0, double beta1,
                                 const QuadratureSpec& spec);
// Field-based variant (z2 evaluated through its spline; used by `verify`).
ReducidaResult reducida_integral(const PeriodicField& z1, const PeriodicField& z2,
                                 double dz2_at_0, const QuadratureSpec& spec,
                                 double beta1);

// Doubling search for the smallest b = 2^k with a certified negative
// integral. Throws FamilyInvalid when the b-independent (beta1, pi)
// contribution is nonnegative, SearchFailure past b = 1e12.
double find_b(const std::function<double(double)>& zstar, double beta1,
              const QuadratureSpec& spec);
// Same search with the default oscillation family for (beta1, beta2).
double find_b(double beta1, double beta2, const QuadratureSpec& spec);

// Projects tilde_z onto sine modes k <= n_modes with a tail taper (modes
// below 80% of the cutoff pass untouched), keeping the result exactly odd.
// taper = false gives the plain truncated sine series.
PeriodicField analytic_smooth(const PeriodicField& tilde_z, int n_modes,
                              bool taper = true);

// Full pipeline: z1 build, family checks, b search, smoothing, certification.
std::pair<Curve, TurnoverCertificate> construct_turning_datum(
    double beta1, double beta2, int n_modes, const QuadratureSpec& spec,
    int grid_n = 512);

// Scans min_slope over the stored snapshots; returns the first downward zero
// crossing, refined by bisection on linear-in-time state interpolation.
struct TurnoverEvent {
  double t_star = 0.0;
  double alpha_star = 0.0;
};
std::optional<TurnoverEvent> detect_turnover(const Trajectory<Curve>& trajectory);

}  // namespace muskat
