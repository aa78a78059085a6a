#include "dlab/lattice/arithmetic.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "dlab/errors.hpp"

namespace dlab {

ArithmeticSieve::ArithmeticSieve(std::int64_t limit) : limit_(limit) {
  if (limit < 1) throw ConfigError("sieve limit must be positive");
  const auto n = static_cast<std::size_t>(limit) + 1;
  mu_.assign(n, 0);
  phi_.assign(n, 0);
  std::vector<std::int32_t> primes;
  mu_[1] = 1;
  phi_[1] = 1;
  for (std::size_t i = 2; i < n; ++i) {
    if (phi_[i] == 0) {  // prime
      primes.push_back(static_cast<std::int32_t>(i));
      mu_[i] = -1;
      phi_[i] = static_cast<std::int32_t>(i - 1);
    }
    for (const auto p : primes) {
      const std::size_t ip = i * static_cast<std::size_t>(p);
      if (ip >= n) break;
      if (i % p == 0) {
        mu_[ip] = 0;
        phi_[ip] = phi_[i] * p;
        break;
      }
      mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
      phi_[ip] = phi_[i] * (p - 1);
    }
  }
}

int ArithmeticSieve::mobius(std::int64_t q) const {
  if (q < 1) throw DomainError("mobius: argument must be positive");
  if (q <= limit_) return mu_[static_cast<std::size_t>(q)];
  int mu = 1;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    q /= p;
    if (q % p == 0) return 0;
    mu = -mu;
  }
  return q > 1 ? -mu : mu;
}

std::int64_t ArithmeticSieve::totient(std::int64_t q) const {
  if (q < 1) throw DomainError("totient: argument must be positive");
  if (q <= limit_) return phi_[static_cast<std::size_t>(q)];
  std::int64_t r = q;
  for (std::int64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    while (q % p == 0) q /= p;
    r -= r / p;
  }
  if (q > 1) r -= r / q;
  return r;
}

const ArithmeticSieve& ArithmeticSieve::shared() {
  static const ArithmeticSieve sieve;
  return sieve;
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n, const ArithmeticSieve& sieve) {
  if (q < 1) throw DomainError("ramanujan_sum: q must be positive");
  const std::int64_t g = n == 0 ? q : std::gcd(q, std::llabs(n));
  std::int64_t sum = 0;
  for (std::int64_t d = 1; d * d <= g; ++d) {
    if (g % d) continue;
    sum += d * sieve.mobius(q / d);
    const std::int64_t e = g / d;
    if (e != d) sum += e * sieve.mobius(q / e);
  }
  return sum;
}

std::int64_t divisor_count(std::int64_t n, std::int64_t Q) {
  if (n == 0) throw DomainError("divisor_count: n must be nonzero");
  const std::int64_t m = std::llabs(n);
  std::int64_t c = 0;
  for (std::int64_t q = 1; q < Q && q <= m; ++q)
    if (m % q == 0) ++c;
  return c;
}

Lemma2Report verify_lemma2(std::int64_t Q, std::int64_t n, double eps, const ArithmeticSieve& sieve) {
  if (Q < 1) throw DomainError("verify_lemma2: Q must be positive");
  Lemma2Report r;
  r.Q = Q;
  r.n = n;
  r.eps = eps;
  for (std::int64_t q = Q; q < 2 * Q; ++q) r.ramanujan_mass += std::abs(static_cast<double>(ramanujan_sum(q, n, sieve)));
  r.divisors = divisor_count(n, Q);
  r.ratio = r.ramanujan_mass / (static_cast<double>(r.divisors) * std::pow(static_cast<double>(Q), 1.0 + eps));
  return r;
}

}  // namespace dlab
