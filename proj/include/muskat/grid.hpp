#pragma once

#include <optional>
#include <vector>

namespace muskat {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wraps x into [-pi, pi).
double wrap_angle(double x);

// Node set for 2pi-periodic functions: strictly increasing alphas in [-pi, pi).
class PeriodicGrid {
public:
  // Uniform grid alpha_i = -pi + 2 pi i / n.
  static PeriodicGrid uniform(int n);
  // General strictly increasing nodes; uniformity is detected exactly.
  explicit PeriodicGrid(std::vector<double> alphas);

  int n() const { return static_cast<int>(alphas_.size()); }
  const std::vector<double>& alphas() const { return alphas_; }
  double alpha(int i) const { return alphas_[static_cast<std::size_t>(i)]; }
  bool uniform() const { return uniform_; }
  double spacing() const { return kTwoPi / n(); }  // only meaningful if uniform

  bool operator==(const PeriodicGrid& other) const {
    return alphas_ == other.alphas_;
  }

private:
  PeriodicGrid() = default;
  std::vector<double> alphas_;
  bool uniform_ = false;
};

// Real trigonometric expansion of a periodic sample set on a uniform grid:
//   f(a) = a0 + sum_{k=1}^{n/2-1} (cos_k cos(ka) + sin_k sin(ka))
//        + nyquist * cos((n/2) a)          (even n only)
struct Spectrum {
  int n = 0;
  double a0 = 0.0;
  std::vector<double> cos_coeff;  // index k-1 holds mode k
  std::vector<double> sin_coeff;
  double nyquist = 0.0;

  int max_mode() const { return n / 2; }
  double amplitude(int k) const;  // modulus of the complex coefficient A_k
};

// Samples of a 2pi-periodic real function, optionally with its spectrum.
class PeriodicField {
public:
  PeriodicField(PeriodicGrid grid, std::vector<double> values);

  const PeriodicGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double value(int i) const { return values_[static_cast<std::size_t>(i)]; }
  int n() const { return grid_.n(); }

  // Spectrum of the samples (uniform grids with even n only). Computed on
  // first use and cached; the cache does not change observable state.
  const Spectrum& spectrum() const;
  bool has_spectrum() const { return spectrum_.has_value(); }

  // Builds the field by synthesizing the spectrum on the given uniform grid.
  static PeriodicField from_spectrum(const PeriodicGrid& grid, const Spectrum& spec);

private:
  PeriodicGrid grid_;
  std::vector<double> values_;
  mutable std::optional<Spectrum> spectrum_;
};

// Direct transforms between samples on a uniform grid and the Spectrum above.
Spectrum analyze(const PeriodicGrid& grid, const std::vector<double>& values);
std::vector<double> synthesize(const PeriodicGrid& grid, const Spectrum& spec);

// Pointwise helpers used all over the test and diagnostics code.
PeriodicField map_field(const PeriodicField& f, double (*fn)(double));

}  // namespace muskat
