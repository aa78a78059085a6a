#include "dlab/strichartz/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dlab/errors.hpp"
#include "dlab/util/parallel.hpp"

namespace dlab {

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
  if (n == 0) return {0.5, 0.5};
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(hits) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double centre = (p + z2 / (2 * nd)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / nd + z2 / (4 * nd * nd));
  return {centre, half};
}

namespace {

struct Curve {
  std::vector<cplx> a;
  std::vector<std::int64_t> n, nd;
};

Curve make_curve(const CoefficientVector& a, int d) {
  Curve c;
  for (int n = -a.N(); n <= a.N(); ++n) {
    if (a[n] == cplx{}) continue;
    c.a.push_back(a[n]);
    c.n.push_back(n);
    c.nd.push_back(ipow(n, d));
  }
  return c;
}

double modulus(const Curve& c, double x, double t) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    const double th = kTwoPi * (frac_product(x, c.n[i]) + frac_product(t, c.nd[i]));
    const double cs = std::cos(th), sn = std::sin(th);
    re += c.a[i].real() * cs - c.a[i].imag() * sn;
    im += c.a[i].real() * sn + c.a[i].imag() * cs;
  }
  return std::hypot(re, im);
}

// Uniform double in [0, 1) from the top 53 bits, independent of the library's distributions.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

constexpr std::uint64_t kChunk = 1 << 15;

}  // namespace

double curve_sum_modulus(const CoefficientVector& a, int d, double x, double t) {
  return modulus(make_curve(a, d), x, t);
}

LevelSetProfile level_set_profile(const CoefficientVector& a, int d, std::vector<double> lambdas,
                                  const SamplerConfig& cfg) {
  for (double l : lambdas)
    if (!(l >= 0.0)) throw DomainError("level set: lambda must be nonnegative");
  if (cfg.samples == 0) throw ConfigError("level set: samples must be positive");
  std::sort(lambdas.begin(), lambdas.end());
  const Curve curve = make_curve(a, d);
  const std::size_t chunks = (cfg.samples + kChunk - 1) / kChunk;
  // hits[c][i]: samples of chunk c whose modulus exceeds exactly i of the lambdas
  std::vector<std::vector<std::uint64_t>> above(chunks, std::vector<std::uint64_t>(lambdas.size() + 1));
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  parallel_chunks(chunks, threads, [&](std::size_t ch) {
    std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(ch)};
    std::mt19937_64 rng(seq);
    const std::uint64_t begin = ch * kChunk, end = std::min(cfg.samples, begin + kChunk);
    auto& out = above[ch];
    for (std::uint64_t s = begin; s < end; ++s) {
      const double x = unit(rng), t = unit(rng);
      const double v = modulus(curve, x, t);
      const auto k = std::lower_bound(lambdas.begin(), lambdas.end(), v) - lambdas.begin();
      ++out[static_cast<std::size_t>(k)];
    }
  });
  std::vector<std::uint64_t> tally(lambdas.size() + 1);
  for (const auto& c : above)
    for (std::size_t i = 0; i < c.size(); ++i) tally[i] += c[i];
  LevelSetProfile prof(lambdas.size());
  // samples with v > lambda_i are those that passed at least i + 1 levels
  std::uint64_t cum = 0;
  for (std::size_t i = lambdas.size(); i-- > 0;) {
    cum += tally[i + 1];
    const auto [centre, half] = wilson_interval(cum, cfg.samples, cfg.z);
    (void)centre;
    prof[i] = {lambdas[i], static_cast<double>(cum) / static_cast<double>(cfg.samples), half,
               cfg.samples, cum};
  }
  return prof;
}

LevelSetEntry level_set_measure(const CoefficientVector& a, int d, double lambda,
                                const SamplerConfig& cfg) {
  return level_set_profile(a, d, {lambda}, cfg).front();
}

bool monotone_up_to_ci(const LevelSetProfile& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[i].lambda < p[j].lambda &&
          p[i].estimate + p[i].ci_halfwidth < p[j].estimate - p[j].ci_halfwidth)
        return false;
  return true;
}

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  if (count == 1) return {lo};
  for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  return g;
}

LevelSetReport scan(const CoefficientVector& a, int d, double lo, double hi, double n_exp,
                    const LevelSetScanConfig& cfg) {
  if (cfg.lambdas < 1) throw ConfigError("level set scan: need at least one lambda");
  LevelSetReport rep;
  rep.d = d;
  rep.N = a.N();
  rep.lambda_min = lo;
  rep.lambda_max = hi;
  rep.n_exponent = n_exp;
  rep.lambda_exponent = std::ldexp(1.0, d) + 2.0;
  if (!(lo < hi)) {
    rep.regime = "regime unreachable at this N: empty lambda range";
    return rep;
  }
  const auto prof = level_set_profile(a, d, log_grid(lo, hi, cfg.lambdas), cfg.sampler);
  const double norm = std::pow(static_cast<double>(a.N()), n_exp);
  double lo_r = std::numeric_limits<double>::infinity(), hi_r = 0.0;
  int resolved = 0;
  for (const auto& e : prof) {
    LevelSetRow row{e, e.estimate * std::pow(e.lambda, rep.lambda_exponent) / norm, e.hits >= cfg.min_hits};
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
    if (row.resolved) {
      ++resolved;
      lo_r = std::min(lo_r, row.ratio);
      hi_r = std::max(hi_r, row.ratio);
    }
    rep.rows.push_back(row);
  }
  if (resolved >= 2) rep.stability = hi_r / lo_r;
  if (resolved == 0) rep.regime = "regime unreachable at this N: no lambda in range is resolved by the sample budget";
  return rep;
}

}  // namespace

LevelSetReport verify_cor1(const CoefficientVector& a, int d, const LevelSetScanConfig& cfg) {
  const double N = a.N();
  const double lo = cfg.c * std::pow(N, 0.5 - std::ldexp(1.0, -d) + cfg.eps);
  const double hi = 2.0 * std::sqrt(N);
  return scan(a, d, lo, hi, std::ldexp(1.0, d - 1) - d + cfg.eps, cfg);
}

LevelSetReport verify_kernel_levelset(int d, int N, const LevelSetScanConfig& cfg) {
  const double Nd = N;
  const double lo = cfg.c * std::pow(Nd, 1.0 - std::ldexp(1.0, 1 - d) + cfg.eps);
  const double hi = 2.0 * Nd;
  return scan(CoefficientVector::ones(N, false), d, lo, hi, std::ldexp(1.0, d) - d + 1, cfg);
}

EstEFit fit_level_set_constants(const LevelSetProfile& profile, int d, int N,
                                const std::vector<double>& Qs, double eps) {
  struct Row {
    double a, b;  // a C1 + b C2 >= 1
  };
  std::vector<Row> rows;
  const double Nd = N, w = std::ldexp(1.0, 1 - d);
  for (const auto& e : profile) {
    if (e.estimate <= 0.0 || e.lambda <= 0.0) continue;
    for (double Q : Qs) {
      if (Q <= 0.0) throw DomainError("level set fit: Q must be positive");
      const double X = std::pow(Nd, 1.0 - d * w + eps) * std::pow(Q, w);
      const double Y = std::pow(Nd, eps) / Q;
      const double r = e.lambda * e.lambda * e.estimate * e.estimate;
      rows.push_back({X * e.estimate * e.estimate / r, Y * e.estimate / r});
    }
  }
  EstEFit fit;
  fit.constraints = rows.size();
  if (rows.empty()) {
    fit.satisfied = true;
    return fit;
  }
  auto feasible = [&](double c1, double c2) {
    for (const auto& r : rows)
      if (r.a * c1 + r.b * c2 < 1.0 - 1e-12) return false;
    return true;
  };
  // vertices of the feasible region: the two axis points and pairwise intersections
  std::vector<std::pair<double, double>> cand;
  double c1 = 0.0, c2 = 0.0;
  for (const auto& r : rows) {
    c1 = std::max(c1, 1.0 / r.a);
    c2 = std::max(c2, 1.0 / r.b);
  }
  cand.push_back({c1, 0.0});
  cand.push_back({0.0, c2});
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const double det = rows[i].a * rows[j].b - rows[j].a * rows[i].b;
      if (std::abs(det) < 1e-300) continue;
      const double x = (rows[j].b - rows[i].b) / det;
      const double y = (rows[i].a - rows[j].a) / det;
      if (x >= 0.0 && y >= 0.0) cand.push_back({x, y});
    }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : cand)
    if (x + y < best && feasible(x, y)) {
      best = x + y;
      fit.C1 = x;
      fit.C2 = y;
    }
  fit.satisfied = std::isfinite(best);
  return fit;
}

}  // namespace dlab
