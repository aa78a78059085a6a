#pragma once

#include <cstdint>
#include <string>

namespace dlab {

/// Reduced fraction a/q approximating t with |t - a/q| <= 1/q^2.
struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
  double t = 0.0;
};

/// Largest-denominator continued-fraction convergent of t with q <= q_max.
/// The expansion is exact: t is expanded as the dyadic rational it is.
RationalApprox rational_approx(double t, std::int64_t q_max);

/// Exact check of gcd(a, q) = 1 and |t - a/q| <= 1/q^2 in rational arithmetic.
bool satisfies_dirichlet(const RationalApprox& r);

/// "a/q" with a reduced fraction num/den.
std::string format_fraction(std::int64_t num, std::int64_t den);

}  // namespace dlab
