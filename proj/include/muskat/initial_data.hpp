#pragma once

#include "muskat/dynamics.hpp"

namespace muskat {

// Parameters of the two-interface experiment. The lower bump's exponent is
// configurable because the printed form of the datum duplicates the cubing;
// 3 is the default reading.
struct PaperTwoPhaseParams {
  double m1 = kPi + 0.1;
  double r1 = 0.7;
  double m2 = kPi / 1.2;
  double r2 = 0.3;
  double rho_bar_1 = 20.0 * kPi;
  double rho_bar_2 = kPi / 20.0;
  double f_level = 0.1;
  double g_level = -0.92;
  int lower_bump_exponent = 3;
};

double paper_f0(double alpha, const PaperTwoPhaseParams& p);
double paper_g0(double alpha, const PaperTwoPhaseParams& p);
TwoPhaseState paper_two_phase(int n, const PaperTwoPhaseParams& p = {});

// Snapshot times of the published experiment figure.
std::vector<double> paper_snapshot_times();

PeriodicField cosine_field(int n, double eps, int k);
PeriodicField flat_field(int n, double level = 0.0);
RealLineGraph gaussian_realline(double eps, double sigma, double L, int n);

}  // namespace muskat
