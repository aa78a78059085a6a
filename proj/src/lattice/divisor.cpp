#include "dlab/lattice/divisor.hpp"

#include <algorithm>
#include <string>

#include "dlab/errors.hpp"
#include "dlab/util/numeric.hpp"

namespace dlab {

namespace {

__int128 ipow128(std::int64_t x, int d) {
  __int128 r = 1;
  for (int i = 0; i < d; ++i) r *= x;
  return r;
}

}  // namespace

TripleFinder::TripleFinder(int d, int N) : d_(d), N_(N) {
  if (d < 3 || d % 2 == 0) throw ConfigError("triple enumeration needs an odd power d >= 3");
  if (N < 1) throw ConfigError("range bound N must be at least 1");
  pairs_.reserve(static_cast<std::size_t>(2 * N + 1) * (2 * N + 1));
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b) pairs_.push_back({a + b, ipow(a, d) + ipow(b, d), a, b});
  std::sort(pairs_.begin(), pairs_.end(), [](const Pair& x, const Pair& y) {
    return x.A < y.A || (x.A == y.A && (x.B < y.B || (x.B == y.B && x.n1 < y.n1)));
  });
}

std::vector<Triple> TripleFinder::find(std::int64_t A, std::int64_t B) const {
  std::vector<Triple> out;
  for (int n3 = -N_; n3 <= N_; ++n3) {
    const std::int64_t a = A - n3, b = B - ipow(n3, d_);
    auto lo = std::lower_bound(pairs_.begin(), pairs_.end(), std::pair{a, b}, [](const Pair& p, const auto& k) {
      return p.A < k.first || (p.A == k.first && p.B < k.second);
    });
    for (; lo != pairs_.end() && lo->A == a && lo->B == b; ++lo) out.push_back({lo->n1, lo->n2, n3});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> enumerate_triples(int d, int N, std::int64_t A, std::int64_t B) {
  return TripleFinder(d, N).find(A, B);
}

bool check_divisor_property(const Triple& t, int d, std::int64_t A, std::int64_t B) {
  const __int128 r = static_cast<__int128>(B) - ipow128(A, d);
  for (const std::int64_t s : {t[0] + t[1], t[1] + t[2], t[0] + t[2]}) {
    if (s == 0) {
      if (r != 0) return false;
    } else if (r % s != 0) {
      return false;
    }
  }
  return true;
}

DivisorScan divisor_scan(int d, int N, const LatticeBudget& budget) {
  const TripleFinder guard(d, N);  // validates d and N
  DivisorScan r;
  r.d = d;
  r.N = N;
  std::vector<std::int64_t> pw(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) pw[static_cast<std::size_t>(n + N)] = ipow(n, d);
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b)
      for (int c = -N; c <= N; ++c) {
        const std::int64_t A = a + b + c;
        const std::int64_t B = pw[static_cast<std::size_t>(a + N)] + pw[static_cast<std::size_t>(b + N)] +
                               pw[static_cast<std::size_t>(c + N)];
        ++r.solutions;
        if (!check_divisor_property({a, b, c}, d, A, B)) ++r.violations;
      }
  const CountTable table = power_sum_distribution(SystemSpec{d, 3, N}, budget);
  for (const auto& e : table.entries()) {
    if (static_cast<__int128>(e.B) == ipow128(e.A, d)) continue;
    if (e.value > r.max_count) {
      r.max_count = e.value;
      r.argmax_A = e.A;
      r.argmax_B = e.B;
    }
  }
  return r;
}

}  // namespace dlab
