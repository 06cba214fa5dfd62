#include "muskat/spline.hpp"

#include <algorithm>
#include <cmath>

#include "muskat/errors.hpp"

namespace muskat {

namespace {

// Solves the cyclic tridiagonal system for the periodic spline second
// derivatives via the Sherman-Morrison correction of two plain solves.
void solve_tridiagonal(const std::vector<double>& lower, const std::vector<double>& diag,
                       const std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n);
  c[0] = upper[0] / diag[0];
  rhs[0] = rhs[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - lower[i] * c[i - 1];
    c[i] = upper[i] / m;
    rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / m;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] -= c[i] * rhs[i + 1];
  }
}

}  // namespace

PeriodicSpline::PeriodicSpline(const std::vector<double>& x, const std::vector<double>& y)
    : x_(x), y_(y) {
  const int n = static_cast<int>(x_.size());
  if (n < 3) throw SplineError("periodic spline needs at least 3 nodes");
  if (y_.size() != x_.size()) throw SplineError("spline node/value size mismatch");
  for (int i = 1; i < n; ++i) {
    if (!(x_[static_cast<std::size_t>(i)] > x_[static_cast<std::size_t>(i - 1)])) {
      throw SplineError("spline nodes must be strictly increasing (duplicate node?)");
    }
  }
  if (x_.back() - x_.front() >= kTwoPi) {
    throw SplineError("periodic spline nodes must span less than one period");
  }
  x0_ = x_.front();

  // interval lengths, with the wrap interval closing the period
  std::vector<double> h(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) {
    h[static_cast<std::size_t>(i)] = x_[static_cast<std::size_t>(i + 1)] - x_[static_cast<std::size_t>(i)];
  }
  h[static_cast<std::size_t>(n - 1)] = x_.front() + kTwoPi - x_.back();

  uniform_ = true;
  for (int i = 0; i < n; ++i) {
    if (std::fabs(h[static_cast<std::size_t>(i)] - h[0]) > 1e-12) {
      uniform_ = false;
      break;
    }
  }
  h_uniform_ = h[0];

  auto yv = [&](int i) { return y_[static_cast<std::size_t>(((i % n) + n) % n)]; };
  auto hv = [&](int i) { return h[static_cast<std::size_t>(((i % n) + n) % n)]; };

  // Cyclic system: (h_{i-1}/6) M_{i-1} + ((h_{i-1}+h_i)/3) M_i + (h_i/6) M_{i+1} = d_i
  std::vector<double> lower(static_cast<std::size_t>(n)), diag(static_cast<std::size_t>(n)),
      upper(static_cast<std::size_t>(n)), rhs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double hm = hv(i - 1);
    const double hi = hv(i);
    lower[static_cast<std::size_t>(i)] = hm / 6.0;
    diag[static_cast<std::size_t>(i)] = (hm + hi) / 3.0;
    upper[static_cast<std::size_t>(i)] = hi / 6.0;
    rhs[static_cast<std::size_t>(i)] =
        (yv(i + 1) - yv(i)) / hi - (yv(i) - yv(i - 1)) / hm;
  }

  // Sherman-Morrison: remove the corner entries lower[0] (to M_{n-1}) and
  // upper[n-1] (to M_0) with u = (gamma, 0, ..., 0, upper[n-1]),
  // v = (1, 0, ..., 0, lower[0]/gamma).
  const double gamma = -diag[0];
  std::vector<double> d2 = diag;
  d2[0] -= gamma;
  d2[static_cast<std::size_t>(n - 1)] -=
      upper[static_cast<std::size_t>(n - 1)] * lower[0] / gamma;

  std::vector<double> z1 = rhs;
  solve_tridiagonal(lower, d2, upper, z1);
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);
  u[0] = gamma;
  u[static_cast<std::size_t>(n - 1)] = upper[static_cast<std::size_t>(n - 1)];
  std::vector<double> z2 = u;
  solve_tridiagonal(lower, d2, upper, z2);

  const double vz1 = z1[0] + lower[0] / gamma * z1[static_cast<std::size_t>(n - 1)];
  const double vz2 = z2[0] + lower[0] / gamma * z2[static_cast<std::size_t>(n - 1)];
  const double factor = vz1 / (1.0 + vz2);
  m_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    m_[static_cast<std::size_t>(i)] =
        z1[static_cast<std::size_t>(i)] - factor * z2[static_cast<std::size_t>(i)];
  }
}

int PeriodicSpline::locate(double xw) const {
  const int n = static_cast<int>(x_.size());
  if (uniform_) {
    int i = static_cast<int>(std::floor((xw - x0_) / h_uniform_));
    if (i < 0) i = 0;
    if (i > n - 1) i = n - 1;
    return i;
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), xw);
  int i = static_cast<int>(it - x_.begin()) - 1;
  if (i < 0) i = 0;
  if (i > n - 1) i = n - 1;
  return i;
}

void PeriodicSpline::eval_all(double x, double& s, double& ds, double& d2s) const {
  const int n = static_cast<int>(x_.size());
  // wrap into [x0, x0 + 2pi)
  double xw = x - kTwoPi * std::floor((x - x0_) / kTwoPi);
  if (xw >= x0_ + kTwoPi) xw = x0_;
  const int i = locate(xw);
  const int ip = (i + 1) % n;
  const double xi = x_[static_cast<std::size_t>(i)];
  const double xnext = (i == n - 1) ? x_.front() + kTwoPi : x_[static_cast<std::size_t>(i + 1)];
  const double h = xnext - xi;
  const double t = xw - xi;
  const double yi = y_[static_cast<std::size_t>(i)];
  const double yp = y_[static_cast<std::size_t>(ip)];
  const double mi = m_[static_cast<std::size_t>(i)];
  const double mp = m_[static_cast<std::size_t>(ip)];
  const double c1 = (yp - yi) / h - h * (2.0 * mi + mp) / 6.0;
  s = yi + t * (c1 + t * (mi / 2.0 + t * (mp - mi) / (6.0 * h)));
  ds = c1 + t * (mi + t * (mp - mi) / (2.0 * h));
  d2s = mi + t * (mp - mi) / h;
}

double PeriodicSpline::eval(double x) const {
  double s, ds, d2s;
  eval_all(x, s, ds, d2s);
  return s;
}

double PeriodicSpline::derivative(double x) const {
  double s, ds, d2s;
  eval_all(x, s, ds, d2s);
  return ds;
}

double PeriodicSpline::second_derivative(double x) const {
  double s, ds, d2s;
  eval_all(x, s, ds, d2s);
  return d2s;
}

void PeriodicSpline::eval_with_derivative(double x, double& s, double& ds) const {
  double d2s;
  eval_all(x, s, ds, d2s);
}

double PeriodicSpline::period_integral() const {
  const int n = static_cast<int>(x_.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1) % n;
    const double h = (i == n - 1) ? x_.front() + kTwoPi - x_.back()
                                  : x_[static_cast<std::size_t>(i + 1)] - x_[static_cast<std::size_t>(i)];
    const double yi = y_[static_cast<std::size_t>(i)];
    const double yp = y_[static_cast<std::size_t>(ip)];
    const double mi = m_[static_cast<std::size_t>(i)];
    const double mp = m_[static_cast<std::size_t>(ip)];
    total += h * (yi + yp) / 2.0 - h * h * h * (mi + mp) / 24.0;
  }
  return total;
}

NaturalSpline::NaturalSpline(const std::vector<double>& x, const std::vector<double>& y)
    : x_(x), y_(y) {
  const int n = static_cast<int>(x_.size());
  if (n < 3) throw SplineError("natural spline needs at least 3 nodes");
  if (y_.size() != x_.size()) throw SplineError("spline node/value size mismatch");
  for (int i = 1; i < n; ++i) {
    if (!(x_[static_cast<std::size_t>(i)] > x_[static_cast<std::size_t>(i - 1)])) {
      throw SplineError("spline nodes must be strictly increasing (duplicate node?)");
    }
  }
  uniform_ = true;
  const double h0 = x_[1] - x_[0];
  for (int i = 1; i + 1 < n; ++i) {
    if (std::fabs((x_[static_cast<std::size_t>(i + 1)] - x_[static_cast<std::size_t>(i)]) - h0) > 1e-12) {
      uniform_ = false;
      break;
    }
  }
  h_uniform_ = h0;

  // interior equations, M_0 = M_{n-1} = 0
  const std::size_t interior = static_cast<std::size_t>(n - 2);
  m_.assign(static_cast<std::size_t>(n), 0.0);
  if (interior == 0) return;
  std::vector<double> lower(interior), diag(interior), upper(interior), rhs(interior);
  for (std::size_t i = 0; i < interior; ++i) {
    const std::size_t j = i + 1;
    const double hm = x_[j] - x_[j - 1];
    const double hi = x_[j + 1] - x_[j];
    lower[i] = hm / 6.0;
    diag[i] = (hm + hi) / 3.0;
    upper[i] = hi / 6.0;
    rhs[i] = (y_[j + 1] - y_[j]) / hi - (y_[j] - y_[j - 1]) / hm;
  }
  solve_tridiagonal(lower, diag, upper, rhs);
  for (std::size_t i = 0; i < interior; ++i) m_[i + 1] = rhs[i];
}

int NaturalSpline::locate(double x) const {
  const int n = static_cast<int>(x_.size());
  if (uniform_) {
    int i = static_cast<int>(std::floor((x - x_.front()) / h_uniform_));
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    return i;
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  if (i < 0) i = 0;
  if (i > n - 2) i = n - 2;
  return i;
}

void NaturalSpline::eval_with_derivative(double x, double& s, double& ds) const {
  if (x < x_.front()) {
    s = y_.front();
    ds = 0.0;
    return;
  }
  if (x > x_.back()) {
    s = y_.back();
    ds = 0.0;
    return;
  }
  const int i = locate(x);
  const double h = x_[static_cast<std::size_t>(i + 1)] - x_[static_cast<std::size_t>(i)];
  const double t = x - x_[static_cast<std::size_t>(i)];
  const double yi = y_[static_cast<std::size_t>(i)];
  const double yp = y_[static_cast<std::size_t>(i + 1)];
  const double mi = m_[static_cast<std::size_t>(i)];
  const double mp = m_[static_cast<std::size_t>(i + 1)];
  const double c1 = (yp - yi) / h - h * (2.0 * mi + mp) / 6.0;
  s = yi + t * (c1 + t * (mi / 2.0 + t * (mp - mi) / (6.0 * h)));
  ds = c1 + t * (mi + t * (mp - mi) / (2.0 * h));
}

double NaturalSpline::eval(double x) const {
  double s, ds;
  eval_with_derivative(x, s, ds);
  return s;
}

double NaturalSpline::derivative(double x) const {
  double s, ds;
  eval_with_derivative(x, s, ds);
  return ds;
}

double NaturalSpline::second_derivative(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  const int i = locate(x);
  const double h = x_[static_cast<std::size_t>(i + 1)] - x_[static_cast<std::size_t>(i)];
  const double t = x - x_[static_cast<std::size_t>(i)];
  return m_[static_cast<std::size_t>(i)] +
         t * (m_[static_cast<std::size_t>(i + 1)] - m_[static_cast<std::size_t>(i)]) / h;
}

}  // namespace muskat
