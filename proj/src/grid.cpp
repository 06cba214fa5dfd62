#include "muskat/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "muskat/errors.hpp"

namespace muskat {

double wrap_angle(double x) {
  double w = x - kTwoPi * std::floor((x + kPi) / kTwoPi);
  if (w >= kPi) w -= kTwoPi;  // guards the floor's boundary rounding
  if (w < -kPi) w += kTwoPi;
  return w;
}

PeriodicGrid PeriodicGrid::uniform(int n) {
  if (n < 8) throw GridTooCoarse("periodic grid requires n >= 8");
  PeriodicGrid g;
  g.alphas_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g.alphas_[static_cast<std::size_t>(i)] = -kPi + kTwoPi * i / n;
  g.uniform_ = true;
  return g;
}

PeriodicGrid::PeriodicGrid(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  const int n = static_cast<int>(alphas_.size());
  if (n < 8) throw GridTooCoarse("periodic grid requires n >= 8");
  if (alphas_.front() < -kPi || alphas_.back() >= kPi) {
    throw Error("periodic grid nodes must lie in [-pi, pi)");
  }
  for (int i = 1; i < n; ++i) {
    if (!(alphas_[static_cast<std::size_t>(i)] > alphas_[static_cast<std::size_t>(i - 1)])) {
      throw Error("periodic grid nodes must be strictly increasing");
    }
  }
  uniform_ = true;
  for (int i = 0; i < n; ++i) {
    if (alphas_[static_cast<std::size_t>(i)] != -kPi + kTwoPi * i / n) {
      uniform_ = false;
      break;
    }
  }
}

double Spectrum::amplitude(int k) const {
  if (k == 0) return std::fabs(a0);
  if (n % 2 == 0 && k == n / 2) return std::fabs(nyquist);
  return std::hypot(cos_coeff[static_cast<std::size_t>(k - 1)],
                    sin_coeff[static_cast<std::size_t>(k - 1)]);
}

PeriodicField::PeriodicField(PeriodicGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.n()) {
    throw Error("field values length must match the grid");
  }
}

const Spectrum& PeriodicField::spectrum() const {
  if (!spectrum_) spectrum_ = analyze(grid_, values_);
  return *spectrum_;
}

PeriodicField PeriodicField::from_spectrum(const PeriodicGrid& grid, const Spectrum& spec) {
  PeriodicField f(grid, synthesize(grid, spec));
  f.spectrum_ = spec;
  return f;
}

Spectrum analyze(const PeriodicGrid& grid, const std::vector<double>& values) {
  if (!grid.uniform()) {
    throw UnsupportedGrid("spectral representation requires a uniform grid");
  }
  const int n = grid.n();
  if (n % 2 != 0) {
    throw UnsupportedGrid("spectral representation requires even n");
  }
  Spectrum s;
  s.n = n;
  const int half = n / 2;
  s.cos_coeff.assign(static_cast<std::size_t>(half - 1), 0.0);
  s.sin_coeff.assign(static_cast<std::size_t>(half - 1), 0.0);
  double sum = 0.0;
  for (double v : values) sum += v;
  s.a0 = sum / n;
  for (int k = 1; k < half; ++k) {
    double ck = 0.0, sk = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = grid.alpha(j);
      ck += values[static_cast<std::size_t>(j)] * std::cos(k * a);
      sk += values[static_cast<std::size_t>(j)] * std::sin(k * a);
    }
    s.cos_coeff[static_cast<std::size_t>(k - 1)] = 2.0 * ck / n;
    s.sin_coeff[static_cast<std::size_t>(k - 1)] = 2.0 * sk / n;
  }
  double cn = 0.0;
  for (int j = 0; j < n; ++j) {
    cn += values[static_cast<std::size_t>(j)] * std::cos(half * grid.alpha(j));
  }
  s.nyquist = cn / n;
  return s;
}

std::vector<double> synthesize(const PeriodicGrid& grid, const Spectrum& spec) {
  const int n = grid.n();
  std::vector<double> out(static_cast<std::size_t>(n), spec.a0);
  const int half = spec.n / 2;
  for (int j = 0; j < n; ++j) {
    const double a = grid.alpha(j);
    double v = spec.a0;
    for (int k = 1; k < half; ++k) {
      v += spec.cos_coeff[static_cast<std::size_t>(k - 1)] * std::cos(k * a) +
           spec.sin_coeff[static_cast<std::size_t>(k - 1)] * std::sin(k * a);
    }
    v += spec.nyquist * std::cos(half * a);
    out[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

PeriodicField map_field(const PeriodicField& f, double (*fn)(double)) {
  std::vector<double> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(f.values()[i]);
  return PeriodicField(f.grid(), std::move(v));
}

}  // namespace muskat
