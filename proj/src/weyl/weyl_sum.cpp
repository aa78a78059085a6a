#include "dlab/weyl/weyl_sum.hpp"

#include <cmath>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

std::int64_t checked_pow(std::int64_t n, int d) {
  const long double approx = std::pow(static_cast<long double>(std::llabs(n)), d);
  if (approx >= 0x1p62L) throw DomainError("weyl_sum: n^d exceeds 62 bits");
  return ipow(n, d);
}

double phase(std::int64_t n, int d, double t, std::span<const double> P) {
  double f = frac_product(t, checked_pow(n, d));
  std::int64_t nj = 1;
  for (std::size_t j = 0; j < P.size(); ++j) {
    f += frac_product(P[j], nj);
    nj *= n;
  }
  return f - std::floor(f);
}

}  // namespace

cplx weyl_sum(std::int64_t N, int d, double t, std::span<const double> P) {
  if (N < 1) throw DomainError("weyl_sum: N must be positive");
  if (static_cast<int>(P.size()) > d) throw DomainError("weyl_sum: P must have degree below d");
  CompensatedSum acc;
  for (std::int64_t n = 1; n <= N; ++n) acc.add(unit_phase(phase(n, d, t, P)));
  return acc.value();
}

cplx dirichlet_curve_kernel(std::int64_t N, int d, double x, double t) {
  if (N < 0) throw DomainError("dirichlet_curve_kernel: N must be nonnegative");
  CompensatedSum acc;
  for (std::int64_t n = -N; n <= N; ++n) {
    double f = frac_product(t, checked_pow(n, d)) + frac_product(x, n);
    acc.add(unit_phase(f - std::floor(f)));
  }
  return acc.value();
}

}  // namespace dlab
