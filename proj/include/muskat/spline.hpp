#pragma once

#include <vector>

#include "muskat/grid.hpp"

namespace muskat {

// C^2 cubic spline through (x_i, y_i) with periodic closure x_n = x_0 + 2pi,
// y_n = y_0. Evaluation wraps its argument into the fundamental period.
class PeriodicSpline {
public:
  PeriodicSpline(const std::vector<double>& x, const std::vector<double>& y);
  PeriodicSpline(const PeriodicGrid& grid, const std::vector<double>& y)
      : PeriodicSpline(grid.alphas(), y) {}

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  // One localization, all three values.
  void eval_all(double x, double& s, double& ds, double& d2s) const;
  void eval_with_derivative(double x, double& s, double& ds) const;

  // Integral over one full period (exact for the interpolant).
  double period_integral() const;

  int n() const { return static_cast<int>(x_.size()); }

private:
  int locate(double xw) const;  // interval index for wrapped coordinate
  std::vector<double> x_;       // nodes, ascending, within one period
  std::vector<double> y_;
  std::vector<double> m_;       // second derivatives at nodes (periodic)
  double x0_ = 0.0;
  bool uniform_ = false;
  double h_uniform_ = 0.0;
};

// Natural cubic spline on a finite interval (second derivative zero at the
// ends). Used for truncated real-line graphs. Evaluation outside the node
// range clamps to the boundary values (the callers guarantee decay there).
class NaturalSpline {
public:
  NaturalSpline(const std::vector<double>& x, const std::vector<double>& y);

  double eval(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;
  void eval_with_derivative(double x, double& s, double& ds) const;

private:
  int locate(double x) const;
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;
  bool uniform_ = false;
  double h_uniform_ = 0.0;
};

}  // namespace muskat
