#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace dlab {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Japanese-bracket convention used throughout: <x> = 1 + |x|.
inline double bracket(double x) { return 1.0 + std::abs(x); }

/// Integer power with exact 64-bit arithmetic; caller guarantees no overflow.
constexpr std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Fractional part of t*m for an integer m, computed through an exact
/// two-product so that large m does not destroy the phase.
inline double frac_product(double t, std::int64_t m) {
  const double md = static_cast<double>(m);
  const double hi = t * md;
  const double lo = std::fma(t, md, -hi);
  double f = (hi - std::floor(hi)) + lo;
  f -= std::floor(f);
  return f;
}

/// e^{2 pi i theta}
inline cplx unit_phase(double theta) {
  const double a = kTwoPi * theta;
  return {std::cos(a), std::sin(a)};
}

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
 public:
  void add(cplx v) {
    add_part(re_, cre_, v.real());
    add_part(im_, cim_, v.imag());
  }
  cplx value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double re_ = 0, cre_ = 0, im_ = 0, cim_ = 0;
};

/// Least-squares line through (log x, log y).
struct LogLogFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 0;
  double predict(double x) const { return std::exp(intercept) * std::pow(x, slope); }
};

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace dlab
