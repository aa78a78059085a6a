#include "dlab/spectral/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dlab/errors.hpp"

namespace dlab {

std::string_view to_string(Torus t) { return t == Torus::Unit ? "Unit" : "TwoPi"; }

Torus parse_torus(std::string_view s) {
  if (s == "Unit" || s == "unit") return Torus::Unit;
  if (s == "TwoPi" || s == "twopi" || s == "two_pi") return Torus::TwoPi;
  throw ConfigError("unknown torus convention '" + std::string(s) + "'");
}

void require_same_torus(Torus a, Torus b, const char* op) {
  if (a != b)
    throw ConventionMismatch(std::string(op) + ": operands use different torus conventions (" +
                             std::string(to_string(a)) + " vs " + std::string(to_string(b)) + ")");
}

FourierSeries::FourierSeries(Torus torus, int band)
    : torus_(torus), band_(band), coeff_(static_cast<std::size_t>(2 * band + 1)) {
  if (band < 0) throw DomainError("FourierSeries: negative band");
}

FourierSeries FourierSeries::mode(Torus torus, int n, cplx c) {
  FourierSeries f(torus, std::abs(n));
  f.at(n) = c;
  return f;
}

cplx& FourierSeries::at(int n) {
  if (n < -band_ || n > band_)
    throw DomainError("FourierSeries::at: mode " + std::to_string(n) + " outside band " +
                      std::to_string(band_));
  return coeff_[static_cast<std::size_t>(n + band_)];
}

FourierSeries FourierSeries::widened(int band) const {
  if (band < band_) throw DomainError("FourierSeries::widened: band may only grow");
  FourierSeries r(torus_, band);
  std::copy(coeff_.begin(), coeff_.end(), r.coeff_.begin() + (band - band_));
  return r;
}

FourierSeries FourierSeries::truncated(int band, double* discarded) const {
  if (band < 0) throw DomainError("FourierSeries::truncated: negative band");
  const int keep = std::min(band, band_);
  FourierSeries r(torus_, band);
  double lost = 0.0;
  for (int n = -band_; n <= band_; ++n) {
    const cplx c = (*this)[n];
    if (std::abs(n) <= keep)
      r.at(n) = c;
    else
      lost += std::norm(c);
  }
  if (discarded) *discarded = std::sqrt(lost);
  return r;
}

FourierSeries FourierSeries::trimmed() const {
  int b = 0;
  for (int n = -band_; n <= band_; ++n)
    if ((*this)[n] != cplx{}) b = std::max(b, std::abs(n));
  return truncated(b);
}

bool FourierSeries::conjugate_symmetric(double tol) const {
  for (int n = 0; n <= band_; ++n)
    if (std::abs((*this)[-n] - std::conj((*this)[n])) > tol) return false;
  return true;
}

FourierSeries FourierSeries::relabel(Torus target) const {
  FourierSeries r = *this;
  r.torus_ = target;
  return r;
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& o) {
  require_same_torus(torus_, o.torus_, "FourierSeries +");
  if (o.band_ > band_) *this = widened(o.band_);
  for (int n = -o.band_; n <= o.band_; ++n) at(n) += o[n];
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& o) {
  require_same_torus(torus_, o.torus_, "FourierSeries -");
  if (o.band_ > band_) *this = widened(o.band_);
  for (int n = -o.band_; n <= o.band_; ++n) at(n) -= o[n];
  return *this;
}

FourierSeries& FourierSeries::operator*=(cplx s) {
  for (auto& c : coeff_) c *= s;
  return *this;
}

double h_s_norm(const FourierSeries& f, double s) {
  // Scaled accumulation so tiny or huge coefficients neither underflow nor overflow.
  double scale = 0.0;
  for (int n = -f.band(); n <= f.band(); ++n)
    if (f[n] != cplx{}) scale = std::max(scale, std::abs(f[n]) * std::pow(bracket(n), s));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (int n = -f.band(); n <= f.band(); ++n) {
    if (f[n] == cplx{}) continue;
    const double a = std::abs(f[n]) * std::pow(bracket(n), s) / scale;
    acc += a * a;
  }
  return scale * std::sqrt(acc);
}

FourierSeries product(const FourierSeries& f, const FourierSeries& g, int band_cap) {
  require_same_torus(f.torus(), g.torus(), "product");
  const int bf = f.band(), bg = g.band();
  const int band = bf + bg;
  if (band > band_cap)
    throw BandOverflow("product: band " + std::to_string(band) + " exceeds cap " +
                       std::to_string(band_cap));
  FourierSeries r(f.torus(), band);
  // c(n) sums over k ascending; c(-n) sums over -k in the mirrored order, so
  // conjugate-symmetric inputs produce bitwise conjugate outputs.
  {
    // Pair k with -k so the mean mode of a real product is exactly real.
    cplx acc = f[0] * g[0];
    for (int k = 1; k <= std::min(bf, bg); ++k) acc += f[k] * g[-k] + f[-k] * g[k];
    r.at(0) = acc;
  }
  for (int n = 1; n <= band; ++n) {
    const int klo = std::max(-bf, n - bg), khi = std::min(bf, n + bg);
    cplx pos{}, neg{};
    for (int k = klo; k <= khi; ++k) {
      pos += f[k] * g[n - k];
      neg += f[-k] * g[k - n];
    }
    r.at(n) = pos;
    r.at(-n) = neg;
  }
  return r;
}

FourierSeries spatial_derivative(const FourierSeries& f) {
  const double scale = f.torus() == Torus::TwoPi ? 1.0 : kTwoPi;
  FourierSeries r(f.torus(), f.band());
  for (int n = -f.band(); n <= f.band(); ++n) r.at(n) = f[n] * cplx(0.0, scale * n);
  return r;
}

cplx evaluate(const FourierSeries& f, double x) {
  CompensatedSum acc;
  for (int n = -f.band(); n <= f.band(); ++n) {
    const cplx c = f[n];
    if (c == cplx{}) continue;
    const double phase = f.torus() == Torus::TwoPi ? n * x : kTwoPi * n * x;
    acc.add(c * cplx(std::cos(phase), std::sin(phase)));
  }
  return acc.value();
}

nlohmann::json to_json(const FourierSeries& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = -f.band(); n <= f.band(); ++n) {
    const cplx c = f[n];
    if (c == cplx{}) continue;
    coeffs.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  }
  return {{"convention", std::string(to_string(f.torus()))},
          {"band", f.band()},
          {"coefficients", std::move(coeffs)}};
}

FourierSeries fourier_series_from_json(const nlohmann::json& j) {
  try {
    const Torus t = parse_torus(j.at("convention").get<std::string>());
    int band = j.contains("band") ? j.at("band").get<int>() : 0;
    const auto& coeffs = j.at("coefficients");
    for (const auto& c : coeffs) band = std::max(band, std::abs(c.at("n").get<int>()));
    FourierSeries f(t, band);
    for (const auto& c : coeffs)
      f.at(c.at("n").get<int>()) += cplx(c.at("re").get<double>(), c.at("im").get<double>());
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed FourierSeries JSON: ") + e.what());
  }
}

}  // namespace dlab
