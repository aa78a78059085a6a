#include "dlab/weyl/rational.hpp"

#include <cmath>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

using boost::multiprecision::cpp_int;

// t = num / den exactly (den a power of two).
void exact_dyadic(double t, cpp_int& num, cpp_int& den) {
  int e = 0;
  const double m = std::frexp(t, &e);  // t = m 2^e, m in [0.5, 1)
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  num = mant;
  den = 1;
  const int shift = 53 - e;
  if (shift >= 0)
    den <<= shift;
  else
    num <<= -shift;
}

}  // namespace

RationalApprox rational_approx(double t, std::int64_t q_max) {
  if (q_max < 1) throw ConfigError("rational_approx: q_max must be at least 1");
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("rational_approx: t must lie in [0, 1)");
  RationalApprox best{0, 1, t};
  if (t == 0.0) return best;
  cpp_int num, den;
  exact_dyadic(t, num, den);
  // Convergents p_k / q_k of num / den.
  cpp_int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (den != 0) {
    const cpp_int a = num / den;
    const cpp_int r = num % den;
    const cpp_int p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > q_max) break;
    best.a = static_cast<std::int64_t>(p2);
    best.q = static_cast<std::int64_t>(q2);
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    num = den;
    den = r;
  }
  return best;
}

bool satisfies_dirichlet(const RationalApprox& r) {
  if (r.q < 1 || std::gcd(r.a, r.q) != 1) return false;
  cpp_int num, den;
  if (r.t == 0.0) {
    num = 0;
    den = 1;
  } else {
    exact_dyadic(r.t, num, den);
  }
  // |num/den - a/q| <= 1/q^2  <=>  |num q - a den| q <= den
  cpp_int diff = num * r.q - cpp_int(r.a) * den;
  if (diff < 0) diff = -diff;
  return diff * r.q <= den;
}

std::string format_fraction(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace dlab
