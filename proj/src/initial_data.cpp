#include "muskat/initial_data.hpp"

#include <cmath>

namespace muskat {

namespace {

double bump(double alpha, double center, double radius, int exponent) {
  const double d = wrap_angle(alpha - center);
  if (std::fabs(d) > radius) return 0.0;
  const double s = std::sin(kPi * (d + radius) / (2.0 * radius));
  double v = s * s * s;
  if (exponent == 9) v = v * v * v;
  return v;
}

}  // namespace

double paper_f0(double alpha, const PaperTwoPhaseParams& p) {
  return p.f_level - bump(alpha, p.m1, p.r1, 3);
}

double paper_g0(double alpha, const PaperTwoPhaseParams& p) {
  return p.g_level + bump(alpha, p.m2, p.r2, p.lower_bump_exponent);
}

TwoPhaseState paper_two_phase(int n, const PaperTwoPhaseParams& p) {
  PeriodicGrid grid = PeriodicGrid::uniform(n);
  std::vector<double> fv(static_cast<std::size_t>(n)), gv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    fv[static_cast<std::size_t>(i)] = paper_f0(grid.alpha(i), p);
    gv[static_cast<std::size_t>(i)] = paper_g0(grid.alpha(i), p);
  }
  return TwoPhaseState(GraphInterface(PeriodicField(grid, std::move(fv))),
                       GraphInterface(PeriodicField(grid, std::move(gv))),
                       p.rho_bar_1, p.rho_bar_2);
}

std::vector<double> paper_snapshot_times() {
  return {0.0, 3.46e-4, 7.66e-4, 1.04e-3, 1.84e-3};
}

PeriodicField cosine_field(int n, double eps, int k) {
  PeriodicGrid grid = PeriodicGrid::uniform(n);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = eps * std::cos(k * grid.alpha(i));
  return PeriodicField(grid, std::move(v));
}

PeriodicField flat_field(int n, double level) {
  PeriodicGrid grid = PeriodicGrid::uniform(n);
  return PeriodicField(grid, std::vector<double>(static_cast<std::size_t>(n), level));
}

RealLineGraph gaussian_realline(double eps, double sigma, double L, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  RealLineGraph g = RealLineGraph::uniform(L, n, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    const double x = g.x[static_cast<std::size_t>(i)];
    v[static_cast<std::size_t>(i)] = eps * std::exp(-x * x / (2.0 * sigma * sigma));
  }
  g.f = v;
  return g;
}

}  // namespace muskat
