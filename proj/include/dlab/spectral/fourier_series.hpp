#pragma once

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dlab/util/numeric.hpp"

namespace dlab {

/// Which torus a Fourier object lives on.
///  - Unit:  period 1, basis e^{2 pi i n x}
///  - TwoPi: period 2 pi, basis e^{i n x}
/// Objects on different tori never mix implicitly; see relabel().
enum class Torus { Unit, TwoPi };

std::string_view to_string(Torus t);
Torus parse_torus(std::string_view s);
void require_same_torus(Torus a, Torus b, const char* op);

/// Hard cap on the band of any exact spectral product.
inline constexpr int kDefaultBandCap = 4096;

/// Band-limited Fourier series: coefficients on modes [-band, band], zero outside.
class FourierSeries {
 public:
  explicit FourierSeries(Torus torus = Torus::TwoPi, int band = 0);

  /// A single mode c e^{inx} (band = |n|).
  static FourierSeries mode(Torus torus, int n, cplx c);

  Torus torus() const { return torus_; }
  int band() const { return band_; }

  /// Coefficient of mode n; zero outside the band.
  cplx operator[](int n) const {
    return (n < -band_ || n > band_) ? cplx{} : coeff_[static_cast<std::size_t>(n + band_)];
  }
  /// Mutable coefficient; throws DomainError outside the band.
  cplx& at(int n);

  std::span<const cplx> coefficients() const { return coeff_; }
  std::span<cplx> coefficients() { return coeff_; }

  /// Same function represented on a wider band (band may only grow).
  FourierSeries widened(int band) const;
  /// Drop modes |n| > band; the discarded l2 mass is written to *discarded if given.
  FourierSeries truncated(int band, double* discarded = nullptr) const;
  /// Smallest band holding every nonzero coefficient.
  FourierSeries trimmed() const;

  /// True when coeff(-n) == conj(coeff(n)) within tol (absolute).
  bool conjugate_symmetric(double tol = 0.0) const;

  /// Same coefficients re-read on the other torus (g(x) = f(x / 2pi) or inverse).
  FourierSeries relabel(Torus target) const;

  FourierSeries& operator+=(const FourierSeries& o);
  FourierSeries& operator-=(const FourierSeries& o);
  FourierSeries& operator*=(cplx s);

  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a -= b; }
  friend FourierSeries operator*(FourierSeries a, cplx s) { return a *= s; }
  friend FourierSeries operator*(cplx s, FourierSeries a) { return a *= s; }

  bool operator==(const FourierSeries&) const = default;

 private:
  Torus torus_;
  int band_;
  std::vector<cplx> coeff_;
};

/// (sum_n <n>^{2s} |f(n)|^2)^{1/2} with <n> = 1 + |n|.
double h_s_norm(const FourierSeries& f, double s);

/// Exact product (discrete convolution of coefficients); the result band is
/// band(f) + band(g). Throws BandOverflow past band_cap. Conjugate-symmetric
/// inputs give an exactly conjugate-symmetric result.
FourierSeries product(const FourierSeries& f, const FourierSeries& g,
                      int band_cap = kDefaultBandCap);

/// d/dx: multiplies mode n by i n (TwoPi) or 2 pi i n (Unit).
FourierSeries spatial_derivative(const FourierSeries& f);

/// Point value f(x) in the series' own torus coordinates.
cplx evaluate(const FourierSeries& f, double x);

/// JSON: {"convention": "TwoPi"|"Unit", "band": B, "coefficients": [{"n","re","im"}...]}.
/// Only nonzero coefficients are written; reading restores the exact values.
nlohmann::json to_json(const FourierSeries& f);
FourierSeries fourier_series_from_json(const nlohmann::json& j);

}  // namespace dlab
