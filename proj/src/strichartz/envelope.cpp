#include "dlab/strichartz/envelope.hpp"

#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/strichartz/coefficients.hpp"

namespace dlab {

std::string to_string(EnvelopeStrategy s) {
  switch (s) {
    case EnvelopeStrategy::AllOnes: return "all-ones";
    case EnvelopeStrategy::Single: return "single";
    case EnvelopeStrategy::Random: return "random";
    case EnvelopeStrategy::Ascent: return "ascent";
  }
  return "?";
}

double all_ones_ratio(u128 count, int N, int b) {
  const long double lc = std::log(static_cast<long double>(count));
  const long double lw = b * std::log(static_cast<long double>(2 * N + 1));
  return static_cast<double>(std::exp((lc - lw) / (2.0L * b)));
}

namespace {

std::vector<cplx> normalized(std::vector<cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  s = std::sqrt(s);
  for (auto& x : v) x /= s;
  return v;
}

// Projected gradient ascent of even_norm_power on the unit sphere from `start`.
double ascend(CoefficientVector a, int b, int d, const EnvelopeOptions& opt) {
  double F = even_norm_power(a, b, d, opt.budget);
  for (int it = 0; it < opt.iterations; ++it) {
    const auto g = even_norm_power_gradient(a, b, d, opt.budget);
    double gn = 0.0;
    for (const auto& x : g) gn += std::norm(x);
    gn = std::sqrt(gn);
    if (gn == 0.0) break;
    double eta = opt.step;
    bool improved = false;
    for (int bt = 0; bt < 30 && !improved; ++bt, eta *= 0.5) {
      std::vector<cplx> v(a.values().begin(), a.values().end());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += eta * g[i] / gn;
      CoefficientVector cand(a.N(), normalized(std::move(v)), false);
      const double Fc = even_norm_power(cand, b, d, opt.budget);
      if (Fc > F) {
        F = Fc;
        a = std::move(cand);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return std::pow(F, 1.0 / (2.0 * b));
}

}  // namespace

EnvelopeReport k_lower_envelope(int p, int N, int d, const EnvelopeOptions& opt, double eps) {
  if (p < 2 || p % 2 != 0) throw ConfigError("k_lower_envelope: p must be an even integer >= 2");
  const int b = p / 2;
  SystemSpec{d, b, N}.validate();
  EnvelopeReport rep;
  rep.d = d;
  rep.p = p;
  rep.N = N;
  rep.theory_upper = std::pow(static_cast<double>(N), std::max(0.0, 0.5 - (d + 1.0) / p) + eps);
  const bool searchable = multiset_count(N, b) <= opt.search_work_limit;
  std::mt19937_64 rng(opt.seed);

  for (const auto s : opt.strategies) {
    StrategyResult r{s, std::nullopt, {}};
    switch (s) {
      case EnvelopeStrategy::AllOnes:
        try {
          r.value = all_ones_ratio(count_S({d, b, N}, opt.budget), N, b);
          r.note = "exact count";
        } catch (const BudgetExceeded&) {
          r.value = all_ones_ratio(permutation_lower_bound(N, b), N, b);
          r.note = "permutation lower bound (count over budget)";
        }
        break;
      case EnvelopeStrategy::Single:
        r.value = 1.0;
        break;
      case EnvelopeStrategy::Random:
        if (!searchable || opt.random_draws < 1) {
          r.note = "skipped: over search budget";
          break;
        }
        for (int i = 0; i < opt.random_draws; ++i) {
          const double v = even_norm(CoefficientVector::random(N, rng), b, d, opt.budget);
          if (!r.value || v > *r.value) r.value = v;
        }
        break;
      case EnvelopeStrategy::Ascent:
        if (!searchable || opt.restarts < 1) {
          r.note = "skipped: over search budget";
          break;
        }
        for (int i = 0; i < opt.restarts; ++i) {
          const double v = ascend(CoefficientVector::random(N, rng), b, d, opt);
          if (!r.value || v > *r.value) r.value = v;
        }
        break;
    }
    if (r.value && *r.value > rep.envelope) {
      rep.envelope = *r.value;
      rep.best = s;
    }
    rep.strategies.push_back(std::move(r));
  }
  return rep;
}

}  // namespace dlab
