#include "dlab/weyl/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dlab/errors.hpp"
#include "dlab/util/csv.hpp"
#include "dlab/util/fft.hpp"
#include "dlab/weyl/rational.hpp"
#include "dlab/weyl/weyl_sum.hpp"

namespace dlab {

cplx KernelDecomposition::K_N(double x, double t) const { return dirichlet_curve_kernel(N, d, x, t); }

cplx KernelDecomposition::K1(double x, double t) const {
  const double p = phi.eval(t);
  if (p == 0.0) return {};
  return K_N(x, t) * (p / phi.hat0());
}

cplx KernelDecomposition::K1_hat(std::int64_t n1, std::int64_t n2) const {
  if (std::llabs(n1) > N) return {};
  return phi.hat(n2 - ipow(n1, d)) / phi.hat0();
}

cplx KernelDecomposition::K2_hat(std::int64_t n1, std::int64_t n2) const {
  if (std::llabs(n1) > N) return {};
  const std::int64_t k = n2 - ipow(n1, d);
  if (k == 0) return {};
  return -phi.hat(k) / phi.hat0();
}

KernelDecomposition decompose_kernel(std::int64_t N, int d, double Q) {
  if (N < 1) throw ConfigError("decompose_kernel: N must be positive");
  if (d < 2) throw ConfigError("decompose_kernel: d must be at least 2");
  if (!(Q >= 2.0)) throw ConfigError("decompose_kernel: Q must be at least 2");
  const auto q = static_cast<std::int64_t>(std::floor(Q));
  KernelDecomposition k{N, d, q, std::nullopt, PhiFunction(q)};
  const double lo = std::pow(static_cast<double>(N), d - 1), hi = std::pow(static_cast<double>(N), d);
  if (static_cast<double>(q) < lo || static_cast<double>(q) > hi)
    k.warning = "Q = " + std::to_string(q) + " lies outside [N^{d-1}, N^d] = [" + format_double(lo) +
                ", " + format_double(hi) + "]";
  return k;
}

namespace {

// x/y < u/v for positive denominators.
bool frac_less(std::int64_t x, std::int64_t y, std::int64_t u, std::int64_t v) {
  return static_cast<__int128>(x) * v < static_cast<__int128>(u) * y;
}

}  // namespace

std::vector<Arc> major_arcs(std::int64_t Q) {
  if (Q < 2) throw ConfigError("major_arcs: Q must be at least 2");
  std::vector<Arc> arcs;
  for (std::int64_t q = Q; q <= 5 * Q; ++q) {
    const std::int64_t q2 = q * q;
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      arcs.push_back({a, q, 200 * a * q + 1, 200 * q2, 100 * a * q + 1, 100 * q2});
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return frac_less(x.left_num, x.left_den, y.left_num, y.left_den);
  });
  return arcs;
}

bool arcs_disjoint(const std::vector<Arc>& arcs) {
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
    if (!frac_less(arcs[i].right_num, arcs[i].right_den, arcs[i + 1].left_num, arcs[i + 1].left_den))
      return false;
  return true;
}

void write_arcs_csv(const std::vector<Arc>& arcs, const std::filesystem::path& path) {
  CsvWriter w(path, {"q", "a", "left", "right"});
  for (const auto& a : arcs) {
    w.cell(static_cast<long long>(a.q)).cell(static_cast<long long>(a.a));
    w.cell(format_fraction(a.left_num, a.left_den)).cell(format_fraction(a.right_num, a.right_den));
    w.end_row();
  }
}

void write_scan_csv(const std::vector<ScanRow>& rows, const std::filesystem::path& path) {
  CsvWriter w(path, {"N", "Q", "quantity", "bound", "ratio"});
  for (const auto& r : rows) {
    w.cell(static_cast<long long>(r.N)).cell(static_cast<long long>(r.Q));
    w.cell(r.quantity).cell(r.bound).cell(r.ratio);
    w.end_row();
  }
}

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

double weyl_exponent(int d) { return std::pow(2.0, 1 - d); }

}  // namespace

std::vector<ScanRow> minor_arc_scan(const std::vector<std::int64_t>& Ns, int d, double eps,
                                    int primes_per_N, std::uint64_t seed) {
  if (primes_per_N < 1) throw ConfigError("minor_arc_scan: primes_per_N must be positive");
  std::vector<ScanRow> rows;
  const double e = weyl_exponent(d);
  for (const auto N : Ns) {
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(N) * 0x9E3779B97F4A7C15ull);
    const double lo = std::pow(static_cast<double>(N), d - 1), hi = std::pow(static_cast<double>(N), d);
    std::uniform_real_distribution<double> logq(std::log(lo), std::log(hi));
    for (int i = 0; i < primes_per_N; ++i) {
      const auto top = static_cast<std::int64_t>(std::llround(hi));
      auto q = std::min(top, static_cast<std::int64_t>(std::ceil(std::exp(logq(rng)))));
      const auto start = q;
      while (q <= top && !is_prime(q)) ++q;
      if (q > top)
        for (q = start; !is_prime(q); --q) {
        }
      std::uniform_int_distribution<std::int64_t> pick(1, q - 1);
      const std::int64_t a = pick(rng);
      const double t = (static_cast<double>(a) + 1.0 / (3.0 * static_cast<double>(q))) / static_cast<double>(q);
      const double value = std::abs(weyl_sum(N, d, t));
      const double bound = std::pow(static_cast<double>(N), 1.0 - d * e + eps) * std::pow(static_cast<double>(q), e);
      rows.push_back({N, q, value, bound, value / bound});
    }
  }
  return rows;
}

std::vector<ScanRow> k1_sup_scan(const std::vector<std::int64_t>& Ns, int d, int samples,
                                 std::uint64_t seed) {
  if (samples < 1) throw ConfigError("k1_sup_scan: samples must be positive");
  std::vector<ScanRow> rows;
  const double e = weyl_exponent(d);
  for (const auto N : Ns) {
    const auto Q = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(N), d - 1)));
    const PhiFunction phi(Q);
    std::size_t M = 1;
    while (M < static_cast<std::size_t>(8 * (2 * N + 1))) M *= 2;
    const FftPlan plan(M, FftPlan::Direction::Backward);
    std::vector<cplx> buf(M);
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(N) * 0xD1B54A32D192ED03ull);
    std::uniform_int_distribution<std::int64_t> pickq(Q, 5 * Q);
    std::uniform_real_distribution<double> pos(bump::kLeft, bump::kRight);
    double sup = 0.0;
    for (int s = 0; s < samples; ++s) {
      const std::int64_t q = pickq(rng);
      std::uniform_int_distribution<std::int64_t> picka(1, q - 1);
      std::int64_t a;
      do a = picka(rng);
      while (std::gcd(a, q) != 1);
      const double qd = static_cast<double>(q);
      const double t = (static_cast<double>(a) + pos(rng) / qd) / qd;
      const double w = phi.eval(t) / phi.hat0();
      if (w == 0.0) continue;
      std::fill(buf.begin(), buf.end(), cplx{});
      for (std::int64_t n = -N; n <= N; ++n)
        buf[static_cast<std::size_t>((n + static_cast<std::int64_t>(M)) % static_cast<std::int64_t>(M))] =
            unit_phase(frac_product(t, ipow(n, d)));
      plan.execute(buf);
      double m = 0.0;
      for (const auto& v : buf) m = std::max(m, std::abs(v));
      sup = std::max(sup, m * w);
    }
    const double bound = std::pow(static_cast<double>(N), 1.0 - d * e) * std::pow(static_cast<double>(Q), e);
    rows.push_back({N, Q, sup, bound, sup / bound});
  }
  return rows;
}

std::vector<std::int64_t> phi_hat_scan_set(std::int64_t Q, std::int64_t k_dense, int structured,
                                           int random, std::uint64_t seed) {
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; k <= k_dense; ++k) ks.push_back(k);
  std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(Q));
  std::uniform_int_distribution<std::int64_t> pickq(Q, 5 * Q);
  for (int i = 0; i < structured; ++i) {
    const std::int64_t q = pickq(rng);
    ks.insert(ks.end(), {q, 2 * q, q * (q + 1)});
  }
  // Divisor-rich candidates: smooth numbers carry the most divisors in [Q, 5Q].
  const std::int64_t kmax = 200 * Q * Q;
  std::vector<std::int64_t> smooth{1};
  for (const std::int64_t p : {2, 3, 5, 7, 11, 13}) {
    const std::size_t n = smooth.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::int64_t v = smooth[i] * p; v <= kmax; v *= p) smooth.push_back(v);
  }
  // Only smooth q can divide a smooth k.
  std::vector<std::int64_t> smooth_q;
  for (const auto v : smooth)
    if (v >= Q && v <= 5 * Q) smooth_q.push_back(v);
  std::vector<std::pair<int, std::int64_t>> rich;
  for (const auto k : smooth) {
    int c = 0;
    for (const auto q : smooth_q)
      if (k % q == 0) ++c;
    if (c > 0) rich.emplace_back(-c, k);
  }
  std::sort(rich.begin(), rich.end());
  for (std::size_t i = 0; i < rich.size() && i < static_cast<std::size_t>(structured); ++i)
    ks.push_back(rich[i].second);
  std::uniform_int_distribution<std::int64_t> pickk(1, kmax);
  for (int i = 0; i < random; ++i) ks.push_back(pickk(rng));
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

std::vector<ScanRow> phi_hat_scan(const std::vector<std::int64_t>& Ns, int d, std::int64_t k_dense,
                                  int structured, int random, std::uint64_t seed) {
  std::vector<ScanRow> rows;
  for (const auto N : Ns) {
    const auto Q = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(N), d - 1)));
    const PhiFunction phi(Q);
    double mx = 0.0;
    for (const auto k : phi_hat_scan_set(Q, k_dense, structured, random, seed))
      mx = std::max(mx, std::abs(phi.hat(k)));
    const double value = mx * static_cast<double>(Q);
    rows.push_back({N, Q, value, 1.0, value});
  }
  return rows;
}

}  // namespace dlab
