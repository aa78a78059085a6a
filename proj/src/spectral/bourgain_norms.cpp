#include "dlab/spectral/bourgain_norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

using Interval = std::pair<double, double>;
using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

std::vector<Interval> merge(std::vector<Interval> v) {
  std::sort(v.begin(), v.end());
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.first <= out.back().second)
      out.back().second = std::max(out.back().second, iv.second);
    else
      out.push_back(iv);
  }
  return out;
}

// Union of [c - r, c + r] over centers.
std::vector<Interval> region(const std::vector<double>& centers, double r) {
  std::vector<Interval> v;
  for (double c : centers) v.emplace_back(c - r, c + r);
  return merge(std::move(v));
}

// outer \ inner, both merged and inner contained in outer.
std::vector<Interval> ring(const std::vector<Interval>& outer, const std::vector<Interval>& inner) {
  std::vector<Interval> out;
  for (auto [a, b] : outer) {
    double cur = a;
    for (auto [c, d] : inner) {
      if (d <= cur || c >= b) continue;
      if (c > cur) out.emplace_back(cur, c);
      cur = std::max(cur, d);
    }
    if (cur < b) out.emplace_back(cur, b);
  }
  return out;
}

// Cut intervals into panels no wider than `width`, also splitting at `cuts`.
std::vector<Interval> panels(const std::vector<Interval>& ivs, double width,
                             const std::vector<double>& cuts) {
  std::vector<Interval> out;
  for (auto [a, b] : ivs) {
    std::vector<double> pts{a, b};
    for (double c : cuts)
      if (c > a && c < b) pts.push_back(c);
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double lo = pts[i], hi = pts[i + 1];
      const int k = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
      for (int q = 0; q < k; ++q)
        out.emplace_back(lo + (hi - lo) * q / k, q + 1 == k ? hi : lo + (hi - lo) * (q + 1) / k);
    }
  }
  return out;
}

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

// Two-pass integration: a single Gauss-Kronrod rule per panel, then adaptive
// refinement of the panels that miss an absolute share of the total budget.
Estimate integrate(const std::function<double(double)>& f, const std::vector<Interval>& ps,
                   double abs_floor, const QuadratureOptions& opt) {
  std::vector<double> val(ps.size()), err(ps.size()), l1(ps.size());
  double first = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    val[i] = GK::integrate(f, ps[i].first, ps[i].second, 0, 0.0, &err[i], &l1[i]);
    first += val[i];
  }
  const double abs_target = std::max(opt.rel_tol * std::abs(first), abs_floor);
  const double share = abs_target / std::max<std::size_t>(1, ps.size());
  Estimate r;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (err[i] > share && l1[i] > 0.0) {
      const double tol = std::clamp(share / l1[i], 1e-15, 1e-2);
      val[i] = GK::integrate(f, ps[i].first, ps[i].second, opt.max_depth, tol, &err[i], &l1[i]);
    }
    r.value += val[i];
    r.error += err[i];
  }
  return r;
}

struct ModeTerm {
  int j;
  double nu;  // centre in the shifted variable xi = lambda + n^5
  cplx c;
};

// Integrates g(xi) over the real line where U(xi) = sum_k c_k G_{j_k}(xi - nu_k);
// the support is grown ring by ring until the next ring is negligible.
Estimate integrate_mode(const std::vector<ModeTerm>& terms, const TimeWindow& w,
                        const std::function<double(double, cplx)>& g,
                        const QuadratureOptions& opt) {
  const double rel_tol = opt.rel_tol;
  auto f = [&](double xi) {
    cplx u{};
    for (const auto& t : terms) u += t.c * w.moment_transform(t.j, xi - t.nu);
    return g(xi, u);
  };
  std::vector<double> centers, cuts{0.0};
  for (const auto& t : terms) {
    centers.push_back(t.nu);
    cuts.push_back(t.nu);
  }
  const double unit = 1.0 / w.delta();
  const double width = 2.0 * unit;
  double omega = 64.0;
  auto inner = region(centers, omega * unit);
  Estimate core = integrate(f, panels(inner, width, cuts), 0.0, opt);
  double tail = 0.0;
  for (int round = 0; round < 8; ++round) {
    auto outer = region(centers, 2.0 * omega * unit);
    const Estimate t = integrate(f, panels(ring(outer, inner), width * (1 << std::min(round, 4)), cuts),
                                 rel_tol * std::abs(core.value), opt);
    core.value += t.value;
    core.error += t.error;
    tail = std::abs(t.value);
    inner = std::move(outer);
    omega *= 2.0;
    if (tail <= 0.01 * rel_tol * std::abs(core.value)) break;
  }
  core.error += tail;
  return core;
}

void validate(const HarmonicTrajectory& u, double b) {
  if (!(b > -0.5)) throw DomainError("X_{s,b} weight diverges for b <= -1/2");
  if (u.torus() != Torus::TwoPi)
    throw ConventionMismatch("Bourgain norms are defined on the TwoPi torus");
}

std::vector<std::vector<ModeTerm>> group_modes(const HarmonicTrajectory& u, std::vector<int>& modes) {
  std::vector<std::vector<ModeTerm>> out;
  for (const auto& t : u.terms()) {
    if (modes.empty() || modes.back() != t.n) {
      modes.push_back(t.n);
      out.emplace_back();
    }
    const double n5 = static_cast<double>(ipow(t.n, 5));
    out.back().push_back({t.j, t.lambda + n5, t.c});
  }
  return out;
}

NormResult finish(double sq, double sq_err) {
  NormResult r;
  r.value = std::sqrt(std::max(sq, 0.0));
  r.error = r.value > 0.0 ? sq_err / (2.0 * r.value) : std::sqrt(sq_err);
  return r;
}

}  // namespace

NormResult xsb_norm(const HarmonicTrajectory& u, double s, double b, const TimeWindow& window,
                    const QuadratureOptions& opt) {
  validate(u, b);
  std::vector<int> modes;
  const auto groups = group_modes(u, modes);
  double sq = 0.0, err = 0.0;
  for (std::size_t m = 0; m < groups.size(); ++m) {
    const double ws = std::pow(bracket(modes[m]), 2.0 * s);
    const auto e = integrate_mode(
        groups[m], window,
        [b](double xi, cplx v) { return std::pow(bracket(xi), 2.0 * b) * std::norm(v); },
        opt);
    sq += ws * e.value;
    err += ws * e.error;
  }
  return finish(sq, err);
}

NormResult y_s_norm(const HarmonicTrajectory& u, double s, const TimeWindow& window,
                    const QuadratureOptions& opt) {
  validate(u, 0.5);
  const NormResult x = xsb_norm(u, s, 0.5, window, opt);
  std::vector<int> modes;
  const auto groups = group_modes(u, modes);
  double sq = 0.0, err = 0.0;
  for (std::size_t m = 0; m < groups.size(); ++m) {
    const double ws = std::pow(bracket(modes[m]), 2.0 * s);
    const auto e = integrate_mode(
        groups[m], window, [](double, cplx v) { return std::abs(v); }, opt);
    sq += ws * e.value * e.value;
    err += ws * 2.0 * e.value * e.error;
  }
  const NormResult l1 = finish(sq, err);
  return {x.value + l1.value, x.error + l1.error};
}

}  // namespace dlab
