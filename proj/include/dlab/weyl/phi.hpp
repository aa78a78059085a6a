#pragma once

#include <cstdint>
#include <vector>

#include "dlab/util/numeric.hpp"

namespace dlab {

/// Bump prototype rho(u) = exp(-1/(u(1-u))) on (0, 1), placed on [1/200, 1/100]:
/// phi(s) = rho(200 (s - 1/200)).
namespace bump {

inline constexpr double kLeft = 1.0 / 200.0;
inline constexpr double kRight = 1.0 / 100.0;

double rho(double u);
double phi(double s);

/// R(eta) = int rho(v + 1/2) e^{-2 pi i eta v} dv over |v| <= 1/2 (real, even).
/// Tabulated once by adaptive quadrature on [0, 100] and interpolated; zero beyond.
double rho_transform_centered(double eta);

/// Real-line transform int phi(s) e^{-2 pi i xi s} ds.
cplx transform(double xi);

}  // namespace bump

/// Phi(t) = sum_{Q <= q <= 5Q} sum_{a coprime to q} phi((t - a/q) q^2), 1-periodic.
class PhiFunction {
 public:
  explicit PhiFunction(std::int64_t Q);

  std::int64_t Q() const { return Q_; }
  /// Fourier coefficient via the Ramanujan-sum reduction:
  /// sum_q c_q(-k) / q^2 * F(phi)(k / q^2).
  cplx hat(std::int64_t k) const;
  /// Direct evaluation of the defining arc sum.
  double eval(double t) const;
  /// hat(0), positive.
  double hat0() const { return hat0_; }

 private:
  std::int64_t Q_;
  double hat0_;
  // c_q(k) depends on k mod q only; rows cached per q.
  std::vector<std::vector<std::int32_t>> cq_;
};

PhiFunction build_phi(std::int64_t Q);

}  // namespace dlab
