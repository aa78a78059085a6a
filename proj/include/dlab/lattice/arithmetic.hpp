#pragma once

#include <cstdint>
#include <vector>

namespace dlab {

/// Moebius and Euler totient tables on [1, limit] from one linear sieve.
class ArithmeticSieve {
 public:
  explicit ArithmeticSieve(std::int64_t limit = 1'000'000);
  std::int64_t limit() const { return limit_; }
  /// mu(q); falls back to trial division above the limit.
  int mobius(std::int64_t q) const;
  std::int64_t totient(std::int64_t q) const;

  /// Shared default instance (limit 10^6), built on first use.
  static const ArithmeticSieve& shared();

 private:
  std::int64_t limit_;
  std::vector<std::int8_t> mu_;
  std::vector<std::int32_t> phi_;
};

/// c_q(n) = sum over d | gcd(q, n) of d mu(q / d), with gcd(q, 0) = q.
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t n,
                           const ArithmeticSieve& sieve = ArithmeticSieve::shared());

/// #{q : q | n, 1 <= q < Q}. Throws DomainError for n == 0.
std::int64_t divisor_count(std::int64_t n, std::int64_t Q);

struct Lemma2Report {
  std::int64_t Q = 0;
  std::int64_t n = 0;
  double eps = 0.0;
  double ramanujan_mass = 0.0;  ///< sum_{Q <= q < 2Q} |c_q(n)|
  std::int64_t divisors = 0;    ///< d(n, Q)
  double ratio = 0.0;           ///< mass / (d(n, Q) Q^{1 + eps})
};

Lemma2Report verify_lemma2(std::int64_t Q, std::int64_t n, double eps,
                           const ArithmeticSieve& sieve = ArithmeticSieve::shared());

}  // namespace dlab
