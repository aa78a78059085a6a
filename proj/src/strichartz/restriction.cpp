#include "dlab/strichartz/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dlab/errors.hpp"
#include "dlab/spectral/bourgain_norms.hpp"
#include "dlab/spectral/harmonic_trajectory.hpp"
#include "dlab/util/parallel.hpp"

namespace dlab {

B4Result verify_b4est(const Table2D& f, int d) {
  if (d < 2) throw ConfigError("b4est: d must be at least 2");
  struct Pair {
    std::int64_t m, n;
    cplx c;
  };
  std::vector<Pair> conv;
  conv.reserve(f.size() * f.size());
  for (const auto& p : f)
    for (const auto& q : f) conv.push_back({p.m + q.m, p.n + q.n, p.c * q.c});
  std::sort(conv.begin(), conv.end(),
            [](const Pair& x, const Pair& y) { return std::tie(x.m, x.n) < std::tie(y.m, y.n); });
  double l4 = 0.0;
  for (std::size_t i = 0; i < conv.size();) {
    CompensatedSum s;
    std::size_t j = i;
    for (; j < conv.size() && conv[j].m == conv[i].m && conv[j].n == conv[i].n; ++j) s.add(conv[j].c);
    l4 += std::norm(s.value());
    i = j;
  }
  const double e = (d + 1.0) / (2.0 * d);
  double rhs = 0.0;
  for (const auto& p : f) {
    const double dist = std::abs(static_cast<double>(p.n - ipow(p.m, d)));
    rhs += std::pow(1.0 + dist, e) * std::norm(p.c);
  }
  return {std::pow(l4, 0.25), std::sqrt(rhs)};
}

Table2D random_band_table(int d, int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g;
  const double density = 0.05 + 0.95 * u(rng);
  Table2D t;
  for (int m = -band; m <= band; ++m)
    for (int k = -band; k <= band; ++k)
      if (u(rng) < density) t.push_back({m, ipow(m, d) + k, {g(rng), g(rng)}});
  if (t.empty()) t.push_back({0, 0, {1.0, 0.0}});
  return t;
}

std::pair<double, double> windowed_l4_norm(const std::vector<cplx>& a, const TimeWindow& window,
                                           std::uint64_t samples, std::uint64_t seed,
                                           unsigned threads) {
  if (a.size() % 2 == 0) throw ConfigError("windowed L4: expected 2N+1 coefficients");
  if (samples < 2) throw ConfigError("windowed L4: need at least two samples");
  const int N = static_cast<int>(a.size() / 2);
  const double span = 4.0 * window.delta();
  constexpr std::uint64_t kChunk = 1 << 14;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::pair<double, double>> part(chunks);  // sum, sum of squares
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  parallel_chunks(chunks, threads, [&](std::size_t ch) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(ch)};
    std::mt19937_64 rng(seq);
    const std::uint64_t begin = ch * kChunk, end = std::min(samples, begin + kChunk);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      // x and t in turns: x / 2pi in [0, 1), t / 2pi spread over the window support
      const double xt = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double tt = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * span / kTwoPi;
      const double psi = window(tt * kTwoPi);
      double re = 0.0, im = 0.0;
      if (psi != 0.0)
        for (int n = -N; n <= N; ++n) {
          const cplx c = a[static_cast<std::size_t>(n + N)];
          if (c == cplx{}) continue;
          const double th = kTwoPi * (frac_product(xt, n) - frac_product(tt, ipow(n, 5)));
          re += c.real() * std::cos(th) - c.imag() * std::sin(th);
          im += c.real() * std::sin(th) + c.imag() * std::cos(th);
        }
      const double v = std::pow(psi * psi * (re * re + im * im), 2);
      s += v;
      s2 += v * v;
    }
    part[ch] = {s, s2};
  });
  double s = 0.0, s2 = 0.0;
  for (const auto& [x, y] : part) {
    s += x;
    s2 += y;
  }
  const double n = static_cast<double>(samples);
  const double mean = s / n;
  const double var = std::max(0.0, (s2 / n - mean * mean) / (n - 1));
  // integral over T x R of |psi u|^4 dx dt / (2 pi)^2
  const double scale = span / kTwoPi;
  const double I = scale * mean, dI = scale * std::sqrt(var);
  if (I == 0.0) return {0.0, 0.0};
  return {std::pow(I, 0.25), 0.25 * dI * std::pow(I, -0.75)};
}

EmbeddingReport verify_embeddings(const EmbeddingConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("embeddings: trials must be positive");
  if (cfg.Ns.empty()) throw ConfigError("embeddings: empty N list");
  const TimeWindow window(cfg.delta);
  EmbeddingReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  for (int N : cfg.Ns) {
    if (N < 0) throw ConfigError("embeddings: N must be nonnegative");
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::vector<cplx> a(static_cast<std::size_t>(2 * N + 1));
      for (auto& c : a) c = {g(rng), g(rng)};
      HarmonicTrajectory u(Torus::TwoPi);
      for (int n = -N; n <= N; ++n)
        u.add(n, 0, -static_cast<double>(ipow(n, 5)), a[static_cast<std::size_t>(n + N)]);
      if (u.empty()) continue;
      const auto xsb = xsb_norm(u, 0.0, 0.3, window);
      const auto [l4, err] = windowed_l4_norm(a, window, cfg.samples, rng(), cfg.threads);
      EmbeddingRow row{N, trial, l4, err, xsb.value, l4 / xsb.value};
      rep.max_ratio = std::max(rep.max_ratio, row.ratio);
      rep.min_ratio = std::min(rep.min_ratio, row.ratio);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

}  // namespace dlab
