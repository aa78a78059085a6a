#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "dlab/spectral/fourier_series.hpp"

namespace dlab {

/// One term c e^{inx} t^j e^{i lambda t} (TwoPi) or c e^{2 pi i n x} t^j e^{2 pi i lambda t} (Unit).
struct HarmonicTerm {
  int n = 0;
  int j = 0;
  double lambda = 0.0;
  cplx c{};
};

/// Space-time function given exactly as a finite sum of harmonic terms.
/// Terms sharing (n, j, lambda) are merged on insertion; exact zeros are dropped.
class HarmonicTrajectory {
 public:
  using Key = std::tuple<int, int, double>;  // (n, j, lambda)

  explicit HarmonicTrajectory(Torus torus = Torus::TwoPi) : torus_(torus) {}

  static HarmonicTrajectory from_series(const FourierSeries& f);

  Torus torus() const { return torus_; }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of one (n, j, lambda) term, zero when absent.
  cplx coefficient(int n, int j, double lambda) const;
  bool empty() const { return terms_.empty(); }
  int band() const;
  int max_power() const;

  void add(int n, int j, double lambda, cplx c);
  void add(const HarmonicTerm& t) { add(t.n, t.j, t.lambda, t.c); }
  std::vector<HarmonicTerm> terms() const;
  /// Terms of spatial mode n only.
  std::vector<HarmonicTerm> mode_terms(int n) const;

  /// Spatial slice at time t.
  FourierSeries at(double t) const;
  cplx evaluate(double x, double t) const;

  /// Terms with |n| <= band; discarded terms are returned through *rest when given.
  HarmonicTrajectory truncated(int band, HarmonicTrajectory* rest = nullptr) const;
  /// Spatial mean part (n = 0 terms).
  HarmonicTrajectory zero_mode() const;

  HarmonicTrajectory relabel(Torus target) const;

  HarmonicTrajectory& operator+=(const HarmonicTrajectory& o);
  HarmonicTrajectory& operator-=(const HarmonicTrajectory& o);
  HarmonicTrajectory& operator*=(cplx s);
  friend HarmonicTrajectory operator+(HarmonicTrajectory a, const HarmonicTrajectory& b) {
    return a += b;
  }
  friend HarmonicTrajectory operator-(HarmonicTrajectory a, const HarmonicTrajectory& b) {
    return a -= b;
  }
  friend HarmonicTrajectory operator*(HarmonicTrajectory a, cplx s) { return a *= s; }
  friend HarmonicTrajectory operator*(cplx s, HarmonicTrajectory a) { return a *= s; }

 private:
  Torus torus_;
  std::map<Key, cplx> terms_;
};

/// Term-by-term product (exact; frequencies and powers add).
HarmonicTrajectory product(const HarmonicTrajectory& a, const HarmonicTrajectory& b,
                           int band_cap = kDefaultBandCap);
HarmonicTrajectory spatial_derivative(const HarmonicTrajectory& u);
/// Overwrites each mirrored term (n < 0, or n = 0 with lambda < 0) by the conjugate of its
/// partner. Only meaningful for trajectories that are symmetric up to rounding.
HarmonicTrajectory symmetrized(const HarmonicTrajectory& u);
/// Closed-form d/dt.
HarmonicTrajectory time_derivative(const HarmonicTrajectory& u);
/// d^5/dx^5 (TwoPi only): multiplies mode n by i n^5.
HarmonicTrajectory fifth_derivative(const HarmonicTrajectory& u);
/// True when every term (n,j,lambda,c) has its partner (-n,j,-lambda,conj c) within tol.
bool conjugate_symmetric(const HarmonicTrajectory& u, double tol);

/// JSON list of {n, j, lambda, re, im} plus the convention tag.
nlohmann::json to_json(const HarmonicTrajectory& u);
HarmonicTrajectory harmonic_trajectory_from_json(const nlohmann::json& j);

}  // namespace dlab
