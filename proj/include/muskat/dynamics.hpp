#pragma once

#include <optional>
#include <vector>

#include "muskat/curve.hpp"
#include "muskat/quadrature.hpp"

namespace muskat {

// Pair of graphs (f above g) separating three fluids, with the scaled density
// jumps rho_bar_j = (rho_{j+1} - rho_j) / (4 pi).
struct TwoPhaseState {
  GraphInterface f;
  GraphInterface g;
  double rho_bar_1 = 0.0;
  double rho_bar_2 = 0.0;

  TwoPhaseState(GraphInterface f_in, GraphInterface g_in, double rb1, double rb2);
  const PeriodicGrid& grid() const { return f.grid(); }
  double min_separation() const;
};

// Truncated real-line graph: samples of f on nodes in [-L, L]; f is assumed
// flat (= 0) beyond the truncation.
struct RealLineGraph {
  std::vector<double> x;
  std::vector<double> f;
  double half_length() const { return x.back(); }
  static RealLineGraph uniform(double L, int n, const std::vector<double>& values);
};

// I[u, v](a): the periodic interaction integral in its tan/tanh form,
// evaluated at every node of the shared grid. When u and v are the same field
// the beta = 0 singularity is handled by the local window; otherwise the
// integrand is smooth but near-singular when u - v is small (a denominator
// below the floor raises NearTouching).
PeriodicField interaction_rhs(const PeriodicField& u, const PeriodicField& v,
                              const QuadratureSpec& spec);

// Right-hand sides of the two-interface system:
//   f_t = rb1 I[f,f] + rb2 I[f,g],   g_t = rb2 I[g,g] + rb1 I[g,f].
struct TwoPhaseRhs {
  PeriodicField f_t;
  PeriodicField g_t;
  std::optional<double> near_touch_warning;  // min separation if below 1e-3
};
TwoPhaseRhs two_phase_rhs(const TwoPhaseState& state, const QuadratureSpec& spec);

// Single periodic interface, f_t = rho_bar * I[f, f].
PeriodicField single_graph_rhs(const PeriodicField& f, double rho_bar,
                               const QuadratureSpec& spec);

// Periodic contour velocity (both components in one sweep):
//   z_t(a) = (delta_rho / 4 pi) PV int sin(Dz1) (dz(a) - dz(a-b)) /
//            (cosh(Dz2) - cos(Dz1)) db.
struct ContourRhs {
  PeriodicField z1_t;  // applies to z1 - a (the periodic part)
  PeriodicField z2_t;
};
ContourRhs contour_rhs_periodic(const Curve& curve, const QuadratureSpec& spec);

// Real-line graph velocity on the truncated domain, with the flat-tail
// closed-form correction beyond [-L, L].
struct RealLineRhs {
  std::vector<double> f_t;
  bool truncation_warning = false;  // boundary decay above 1e-8
};
RealLineRhs graph_rhs_realline(const RealLineGraph& graph, double delta_rho,
                               const QuadratureSpec& spec);

// (d_a v1)(alpha0) through the four-integral expansion of the derivative of
// the horizontal velocity, scaled by delta_rho / (4 pi). At a vertical
// tangent point (|d_a z1(alpha0)| ~ 0) the expansion is rejected with
// UseReducida; the reduced integral in the turnover module applies there.
double dalpha_velocity1(const Curve& curve, double alpha0, const QuadratureSpec& spec);

}  // namespace muskat
