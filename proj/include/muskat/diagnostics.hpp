#pragma once

#include <string>
#include <vector>

#include "muskat/evolve.hpp"

namespace muskat {

struct DiagnosticReport {
  std::string name;
  bool passed = false;
  double observed = 0.0;
  std::string expected;  // bound description
  double tolerance = 0.0;
  std::string detail;
};

// Max-norm monotonicity along a stable single-interface run, plus the fitted
// exponential decay rate (reported, not asserted).
struct MaxPrincipleResult {
  DiagnosticReport report;
  double fitted_rate = 0.0;
};
MaxPrincipleResult max_principle_report(const Trajectory<GraphInterface>& traj);

// Relative residual of the L2 decay identity on a truncated real-line run.
DiagnosticReport l2_decay_residual(const Trajectory<RealLineGraph>& traj,
                                   double delta_rho);

// Estimated analyticity-strip half-width from the Fourier decay of the field.
// Returns +infinity for spectra that cut off super-exponentially before the
// grid Nyquist. Throws InsufficientResolution with fewer than 8 modes above
// the 1e-13 amplitude floor.
double strip_width(const PeriodicField& field);

// Nondecreasing strip-width trend over the first snapshots of a stable run.
DiagnosticReport strip_width_trend(const Trajectory<GraphInterface>& traj,
                                   int max_snapshots = 10, double tolerance = 0.05);

// Mean conservation of f (and g) along a trajectory.
DiagnosticReport mean_conservation_report(const Trajectory<TwoPhaseState>& traj,
                                          double tol = 1e-6);
DiagnosticReport mean_conservation_report(const Trajectory<GraphInterface>& traj,
                                          double tol = 1e-6);

}  // namespace muskat
