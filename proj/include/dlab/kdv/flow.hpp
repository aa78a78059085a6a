#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dlab/spectral/fourier_series.hpp"
#include "dlab/spectral/harmonic_trajectory.hpp"

namespace dlab {

/// P1(u) u_x + P2(u) u_x^2 with P(u) = sum_k p[k] u^k.
/// With mean_removed, each u^k in P1 becomes u^k - int_T u^k dx, the integral
/// taken over [0, 2 pi) with length measure.
struct NonlinearitySpec {
  std::vector<double> p1;
  std::vector<double> p2;
  bool mean_removed = false;

  bool is_zero() const;
  /// P1 = u^k.
  static NonlinearitySpec monomial_p1(int k, bool mean_removed = false);
  /// P2 = u^k.
  static NonlinearitySpec monomial_p2(int k);
};

/// e^{-t d_x^5}: mode n times e^{-i n^5 t}. TwoPi convention only.
FourierSeries linear_flow(const FourierSeries& phi, double t);
/// The same flow as a trajectory: terms (n, 0, -n^5, phi_n).
HarmonicTrajectory linear_flow(const FourierSeries& phi);

/// Exact spectral evaluation of the nonlinearity.
FourierSeries nonlinear_term(const FourierSeries& u, const NonlinearitySpec& spec,
                             int band_cap = kDefaultBandCap);
/// Throws BudgetExceeded once the summed term-pair count of the products passes work_cap.
HarmonicTrajectory nonlinear_term(const HarmonicTrajectory& u, const NonlinearitySpec& spec,
                                  int band_cap = kDefaultBandCap,
                                  double work_cap = std::numeric_limits<double>::infinity());

/// |lambda + n^5| below this switches a Duhamel term to its series expansion.
inline constexpr double kResonanceTol = 1e-9;

/// -int_0^t e^{-(t - tau) d_x^5} w(tau) dtau as a closed-form trajectory in t.
HarmonicTrajectory duhamel(const HarmonicTrajectory& w);
/// int_0^t f(tau) dtau for a trajectory f, term by term in closed form.
HarmonicTrajectory time_integral(const HarmonicTrajectory& f);

/// linear_flow(phi) + duhamel(nonlinear_term(linear_flow(phi))).
HarmonicTrajectory first_iterate(const FourierSeries& phi, const NonlinearitySpec& spec,
                                 int band_cap = kDefaultBandCap);

/// phi = eps N^{-s} (e^{iNx} + e^{-iNx}).
FourierSeries two_mode_data(int N, double s, double eps);

struct IllposedRow {
  int N = 0;
  double norm = 0.0;       ///< ||u^(1)(t)||_{H^s}
  double dominance = 0.0;  ///< |nonlinear part| / |linear part| of the mode-N coefficient
};

struct IllposedFit {
  std::vector<IllposedRow> rows;
  double slope = 0.0;
  std::optional<std::string> warning;
};

/// Least-squares slope of log ||u^(1)(t)||_{H^s} against log N for two-mode data.
/// Warns when the secular part does not dominate (dominance < min_dominance for some N).
IllposedFit illposedness_scan(const NonlinearitySpec& spec, double s, double eps, double t,
                              const std::vector<int>& Ns, double min_dominance = 3.0);

/// sup over the sample times of || d_t u + d_x^5 u + nonlinearity ||_{L^2},
/// with d_t in closed form. L^2 here is the coefficient l2 norm.
double residual(const HarmonicTrajectory& u, const NonlinearitySpec& spec,
                const std::vector<double>& times);

/// Uniform grid of `count` points on [0, delta].
std::vector<double> time_grid(double delta, int count);

}  // namespace dlab
