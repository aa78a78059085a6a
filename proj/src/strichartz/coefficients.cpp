#include "dlab/strichartz/coefficients.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/errors.hpp"

namespace dlab {

CoefficientVector::CoefficientVector(int N, std::vector<cplx> values, bool normalize)
    : N_(N), a_(std::move(values)) {
  if (N < 0) throw ConfigError("coefficient vector: N must be nonnegative");
  if (a_.size() != static_cast<std::size_t>(2 * N + 1))
    throw ConfigError("coefficient vector: expected 2N+1 entries");
  if (normalize) {
    const double norm = l2();
    if (norm == 0.0) throw DomainError("coefficient vector: cannot normalize the zero vector");
    for (auto& v : a_) v /= norm;
  }
}

CoefficientVector CoefficientVector::ones(int N, bool normalize) {
  return CoefficientVector(N, std::vector<cplx>(static_cast<std::size_t>(2 * N + 1), 1.0), normalize);
}

CoefficientVector CoefficientVector::single(int N, int n) {
  if (n < -N || n > N) throw DomainError("coefficient vector: mode outside [-N, N]");
  std::vector<cplx> v(static_cast<std::size_t>(2 * N + 1));
  v[static_cast<std::size_t>(n + N)] = 1.0;
  return CoefficientVector(N, std::move(v), false);
}

CoefficientVector CoefficientVector::random(int N, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cplx> v(static_cast<std::size_t>(2 * N + 1));
  for (auto& x : v) x = {g(rng), g(rng)};
  return CoefficientVector(N, std::move(v), true);
}

double CoefficientVector::l2() const {
  // scaled to stay finite for tiny or huge entries
  double scale = 0.0;
  for (const auto& v : a_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v / scale);
  return scale * std::sqrt(s);
}

double CoefficientVector::l1() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::abs(v);
  return s;
}

CoefficientVector CoefficientVector::reversed() const {
  std::vector<cplx> v(a_.rbegin(), a_.rend());
  return CoefficientVector(N_, std::move(v), false);
}

double even_norm_power(const CoefficientVector& a, int b, int d, const LatticeBudget& budget) {
  return sum_squared_amplitudes({d, b, a.N()}, a.values(), budget);
}

double even_norm(const CoefficientVector& a, int b, int d, const LatticeBudget& budget) {
  return std::pow(even_norm_power(a, b, d, budget), 1.0 / (2.0 * b));
}

std::vector<cplx> even_norm_power_gradient(const CoefficientVector& a, int b, int d,
                                           const LatticeBudget& budget) {
  const int N = a.N();
  const auto full = power_sum_distribution({d, b, N}, a.values(), budget);
  std::vector<SignatureEntry<cplx>> lower;
  if (b == 1)
    lower.push_back({0, 0, 1.0});
  else {
    const auto t = power_sum_distribution({d, b - 1, N}, a.values(), budget);
    lower.assign(t.entries().begin(), t.entries().end());
  }
  std::vector<cplx> g(static_cast<std::size_t>(2 * N + 1));
  for (int m = -N; m <= N; ++m) {
    const std::int64_t md = ipow(m, d);
    CompensatedSum acc;
    for (const auto& e : lower) {
      const cplx hi = full.lookup(e.A + m, e.B + md);
      if (hi != cplx{}) acc.add(hi * std::conj(e.value));
    }
    g[static_cast<std::size_t>(m + N)] = static_cast<double>(b) * acc.value();
  }
  return g;
}

}  // namespace dlab
