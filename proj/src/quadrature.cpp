#include "muskat/quadrature.hpp"

#include <cmath>

#include "muskat/errors.hpp"

namespace muskat {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error("quadrature tolerances must be positive");
  }
  if (!(local_window > 0.0) || local_window > kPi / 8.0) {
    throw Error("local_window must lie in (0, pi/8]");
  }
  if (taylor_order < 2 || taylor_order > 4) {
    throw Error("taylor_order must be 2, 3 or 4");
  }
}

QuadResult integrate_interval(const std::function<double(double)>& f, double a,
                              double b, const QuadratureSpec& spec,
                              const std::vector<double>* interior_breaks) {
  double v = 0.0;
  QuadResult r = integrate_adaptive<double>(f, a, b, spec, &v, interior_breaks);
  r.value = v;
  return r;
}

namespace {

// Window integral of the regular part by its even Taylor polynomial; the
// cot-type odd part integrates to zero exactly over the symmetric window.
double window_value(const std::function<double(double)>& integrand,
                    const LocalModel& local, double h, int taylor_order) {
  if (local.even_taylor) {
    const auto& c = *local.even_taylor;
    double total = 0.0;
    double hp = h;
    for (std::size_t j = 0; j < c.size(); ++j) {  // coefficients of beta^{2j}
      total += 2.0 * c[j] * hp / (2.0 * j + 1.0);
      hp *= h * h;
    }
    return total;
  }
  if (taylor_order <= 2) {
    // a0 + a2 b^2 model from one probe pair
    const auto even = [&](double b) { return 0.5 * (integrand(b) + integrand(-b)); };
    double a0;
    double e1 = even(h);
    if (local.even_limit) {
      a0 = *local.even_limit;
    } else {
      double e2 = even(0.5 * h);
      a0 = (4.0 * e2 - e1) / 3.0;
    }
    const double a2h2 = e1 - a0;
    return 2.0 * h * a0 + (2.0 * h / 3.0) * a2h2;
  }
  std::optional<double> limit;
  if (local.even_limit) limit = *local.even_limit;
  return window_integral<double>([&](double b) { return integrand(b); }, h, limit);
}

}  // namespace

QuadResult pv_integral_detailed(const std::function<double(double)>& integrand,
                                const LocalModel& local, const QuadratureSpec& spec,
                                const std::vector<double>* interior_breaks) {
  spec.validate();
  const double h = spec.local_window;
  QuadResult left = integrate_interval(integrand, -kPi, -h, spec, interior_breaks);
  QuadResult right = integrate_interval(integrand, h, kPi, spec, interior_breaks);
  const double window = window_value(integrand, local, h, spec.taylor_order);
  QuadResult total;
  total.value = left.value + right.value + window;
  // The window polynomial truncation error is estimated from the h^{2k+3}
  // scaling of the first dropped even term, probed at the window edge.
  const auto even = [&](double b) { return 0.5 * (integrand(b) + integrand(-b)); };
  const double model_err =
      std::fabs(even(h) - even(0.5 * h)) * std::pow(0.5, spec.taylor_order + 1) * h * 0.1;
  total.error = left.error + right.error + model_err;
  return total;
}

double pv_integral(const std::function<double(double)>& integrand,
                   const LocalModel& local, const QuadratureSpec& spec,
                   const std::vector<double>* interior_breaks) {
  return pv_integral_detailed(integrand, local, spec, interior_breaks).value;
}

double pv_integral(const std::function<double(double)>& integrand,
                   const QuadratureSpec& spec,
                   const std::vector<double>* interior_breaks) {
  return integrate_interval(integrand, -kPi, kPi, spec, interior_breaks).value;
}

PeriodicField hilbert_transform(const PeriodicField& field) {
  if (!field.grid().uniform()) {
    throw UnsupportedGrid("hilbert_transform requires a uniform grid");
  }
  const Spectrum& s = field.spectrum();
  Spectrum out = s;
  out.a0 = 0.0;
  for (std::size_t k = 0; k < s.cos_coeff.size(); ++k) {
    // H(cos ka) = sin ka, H(sin ka) = -cos ka
    out.cos_coeff[k] = -s.sin_coeff[k];
    out.sin_coeff[k] = s.cos_coeff[k];
  }
  out.nyquist = 0.0;  // the Nyquist sine vanishes at the nodes
  return PeriodicField::from_spectrum(field.grid(), out);
}

PeriodicField lambda_op(const PeriodicField& field, double s) {
  if (!field.grid().uniform()) {
    throw UnsupportedGrid("lambda_op requires a uniform grid");
  }
  const Spectrum& sp = field.spectrum();
  Spectrum out = sp;
  out.a0 = 0.0;
  for (std::size_t k = 0; k < sp.cos_coeff.size(); ++k) {
    const double mult = std::pow(static_cast<double>(k + 1), s);
    out.cos_coeff[k] = sp.cos_coeff[k] * mult;
    out.sin_coeff[k] = sp.sin_coeff[k] * mult;
  }
  out.nyquist = sp.nyquist * std::pow(static_cast<double>(sp.n / 2), s);
  return PeriodicField::from_spectrum(field.grid(), out);
}

double ad_inequality_margin(const PeriodicField& g) {
  if (!g.grid().uniform()) {
    throw UnsupportedGrid("ad_inequality_margin requires a uniform grid");
  }
  const int n = g.n();
  const Spectrum& s = g.spectrum();
  // g must be band-limited to n/4 so that g^2 is alias-free on the grid.
  double head = 0.0;
  for (int k = 1; k <= s.max_mode(); ++k) head = std::max(head, s.amplitude(k));
  const double floor_amp = std::max(1e-12 * std::max(head, std::fabs(s.a0)), 1e-300);
  for (int k = n / 4 + 1; k <= s.max_mode(); ++k) {
    if (s.amplitude(k) > floor_amp) {
      throw AliasingError("field degree exceeds n/4; g^2 would alias");
    }
  }
  PeriodicField lg = lambda_op(g, 1.0);
  std::vector<double> sq(g.values().size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = g.values()[i] * g.values()[i];
  PeriodicField lg2 = lambda_op(PeriodicField(g.grid(), std::move(sq)), 1.0);
  double margin = 0.0;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const double v = 2.0 * g.value(i) * lg.value(i) - lg2.value(i);
    if (first || v < margin) {
      margin = v;
      first = false;
    }
  }
  return margin;
}

}  // namespace muskat
