#include "dlab/kdv/picard.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

double fifth(int n) {
  const double d = n;
  return d * d * d * d * d;
}

cplx rotation(int n, double t) {
  // e^{i n^5 t} with the phase reduced in long double
  const long double ph = std::fmod(static_cast<long double>(fifth(n)) * t, 2.0L * std::numbers::pi_v<long double>);
  return {std::cos(static_cast<double>(ph)), std::sin(static_cast<double>(ph))};
}

double sup_diff(const Trajectory& a, const Trajectory& b, const std::vector<double>& times, double s) {
  double m = 0.0;
  const auto* ha = std::get_if<HarmonicTrajectory>(&a);
  const auto* hb = std::get_if<HarmonicTrajectory>(&b);
  if (ha && hb) {
    // subtract coefficients first: identical terms cancel exactly
    const HarmonicTrajectory d = *ha - *hb;
    for (double t : times) m = std::max(m, h_s_norm(d.at(t), s));
    return m;
  }
  for (double t : times) m = std::max(m, h_s_norm(slice(a, t) - slice(b, t), s));
  return m;
}

SampledTrajectory sample(const Trajectory& u, double delta, int steps) {
  SampledTrajectory out;
  out.step = delta / steps;
  for (int k = 0; k <= steps; ++k) out.frames.push_back(slice(u, out.step * k));
  return out;
}

// One Picard step on time samples. Duhamel per mode by cumulative Simpson on
// e^{i n^5 tau} w_n(tau); odd nodes close with the three-point rule on the last interval.
SampledTrajectory sampled_step(const SampledTrajectory& prev, const FourierSeries& phi,
                               const NonlinearitySpec& spec, int band_cap, double* discarded) {
  const std::size_t K = prev.frames.size() - 1;
  const double h = prev.step;
  std::vector<FourierSeries> w;
  w.reserve(K + 1);
  const int wide = std::max(kDefaultBandCap, 8 * band_cap);
  for (const auto& f : prev.frames) w.push_back(nonlinear_term(f, spec, wide));
  SampledTrajectory out;
  out.step = h;
  for (std::size_t k = 0; k <= K; ++k) out.frames.push_back(linear_flow(phi, h * static_cast<double>(k)).widened(band_cap));
  *discarded = 0.0;
  for (std::size_t k = 0; k <= K; ++k) {
    double cut = 0.0;
    for (int n = -w[k].band(); n <= w[k].band(); ++n)
      if (std::abs(n) > band_cap) cut += std::norm(w[k][n]);
    *discarded = std::max(*discarded, std::sqrt(cut) * h * static_cast<double>(k));
  }
  std::vector<cplx> g(K + 1);
  for (int n = -band_cap; n <= band_cap; ++n) {
    for (std::size_t k = 0; k <= K; ++k) g[k] = rotation(n, h * static_cast<double>(k)) * w[k][n];
    cplx even_sum = 0.0;  // integral up to the last even node
    for (std::size_t k = 1; k <= K; ++k) {
      cplx I;
      if (k % 2 == 0) {
        even_sum += h / 3.0 * (g[k - 2] + 4.0 * g[k - 1] + g[k]);
        I = even_sum;
      } else {
        I = even_sum + h / 12.0 * (5.0 * g[k - 1] + 8.0 * g[k] - g[k + 1]);
      }
      out.frames[k].at(n) -= std::conj(rotation(n, h * static_cast<double>(k))) * I;
    }
  }
  return out;
}

void prune(HarmonicTrajectory& u, double delta, double tol, double* bound) {
  if (tol <= 0.0) return;
  HarmonicTrajectory kept(u.torus());
  for (const auto& t : u.terms()) {
    const double size = std::abs(t.c) * std::pow(delta, t.j);
    if (size < tol)
      *bound += size;
    else
      kept.add(t);
  }
  u = std::move(kept);
}

}  // namespace

FourierSeries SampledTrajectory::at(double t) const {
  if (frames.empty()) throw DomainError("sampled trajectory: no frames");
  if (t < -1e-15 * horizon() || t > horizon() * (1 + 1e-15))
    throw DomainError("sampled trajectory: time outside the sampled window");
  if (frames.size() == 1) return frames[0];
  const double x = std::clamp(t / step, 0.0, static_cast<double>(frames.size() - 1));
  const std::size_t k = std::min(static_cast<std::size_t>(x), frames.size() - 2);
  const double f = x - static_cast<double>(k);
  const double t0 = step * static_cast<double>(k), t1 = t0 + step;
  FourierSeries out(frames[k].torus(), std::max(frames[k].band(), frames[k + 1].band()));
  for (int n = -out.band(); n <= out.band(); ++n) {
    const cplx v = (1 - f) * rotation(n, t0) * frames[k][n] + f * rotation(n, t1) * frames[k + 1][n];
    out.at(n) = std::conj(rotation(n, t)) * v;
  }
  return out;
}

FourierSeries slice(const Trajectory& u, double t) {
  return std::visit([t](const auto& v) { return v.at(t); }, u);
}

PicardResult picard_solve(const FourierSeries& phi, const NonlinearitySpec& spec, const PicardOptions& opt) {
  if (!(opt.delta > 0.0)) throw ConfigError("picard: delta must be positive");
  if (opt.max_iter < 0) throw ConfigError("picard: max_iter must be nonnegative");
  if (opt.band_cap < 1) throw ConfigError("picard: band_cap must be positive");
  if (opt.sampled_steps < 2 || opt.sampled_steps % 2 != 0)
    throw ConfigError("picard: sampled_steps must be even and at least 2");
  if (phi.torus() != Torus::TwoPi) throw ConventionMismatch("picard: data must be on the 2 pi torus");

  PicardResult res;
  std::ostringstream rep;
  double cut0 = 0.0;
  const FourierSeries data = phi.truncated(opt.band_cap, &cut0);
  const auto times = time_grid(opt.delta, opt.diag_samples);
  const HarmonicTrajectory lin = linear_flow(data);
  const int wide = std::max(kDefaultBandCap, (static_cast<int>(std::max(spec.p1.size(), spec.p2.size())) + 2) * opt.band_cap);

  Trajectory cur = lin;
  res.states.push_back({0, cur, sup_diff(cur, HarmonicTrajectory(Torus::TwoPi), times, opt.s), cut0, 0.0, lin.size()});
  rep << "iterate 0: linear flow, " << lin.size() << " terms\n";

  for (int j = 1; j <= opt.max_iter; ++j) {
    PicardState st;
    st.j = j;
    std::optional<HarmonicTrajectory> w;
    if (const auto* exact = std::get_if<HarmonicTrajectory>(&cur)) {
      try {
        w = nonlinear_term(*exact, spec, wide, opt.work_cap);
      } catch (const BandOverflow&) {
        throw;
      } catch (const BudgetExceeded&) {
      }
      if (!w) {
        res.sampled = true;
        res.sampled_step = opt.delta / opt.sampled_steps;
        rep << "iterate " << j << ": exact products of " << exact->size()
            << " terms pass the work cap; switching to " << opt.sampled_steps << " time samples, step "
            << res.sampled_step << "\n";
        cur = sample(cur, opt.delta, opt.sampled_steps);
      }
    }
    if (w) {
      HarmonicTrajectory next = lin + duhamel(*w);
      HarmonicTrajectory rest;
      next = next.truncated(opt.band_cap, &rest);
      for (double t : times) st.discarded_l2 = std::max(st.discarded_l2, h_s_norm(rest.at(t), 0.0));
      prune(next, opt.delta, opt.prune_tol, &st.pruned_bound);
      if (next.size() <= opt.term_cap) {
        st.terms = next.size();
        st.trajectory = std::move(next);
      } else {
        res.sampled = true;
        res.sampled_step = opt.delta / opt.sampled_steps;
        rep << "iterate " << j << ": " << next.size() << " terms exceed the cap " << opt.term_cap
            << "; switching to " << opt.sampled_steps << " time samples, step " << res.sampled_step << "\n";
        cur = sample(cur, opt.delta, opt.sampled_steps);
      }
    }
    if (const auto* samp = std::get_if<SampledTrajectory>(&cur)) {
      st.trajectory = sampled_step(*samp, data, spec, opt.band_cap, &st.discarded_l2);
      st.terms = 0;
      std::vector<double> nodes;
      for (std::size_t k = 0; k < samp->frames.size(); ++k) nodes.push_back(samp->step * static_cast<double>(k));
      st.diff_norm = sup_diff(st.trajectory, cur, nodes, opt.s);
    } else {
      st.diff_norm = sup_diff(st.trajectory, cur, times, opt.s);
    }
    rep << "iterate " << j << ": diff " << st.diff_norm << ", terms " << st.terms << ", discarded l2 "
        << st.discarded_l2 << ", pruned " << st.pruned_bound << "\n";
    cur = st.trajectory;
    res.states.push_back(std::move(st));
    if (res.states.back().diff_norm <= opt.stop_tol) break;
  }
  const auto ratios = contraction_ratios(res);
  int run = 0;
  for (double r : ratios) {
    run = (r <= 0.5) ? run + 1 : 0;
    if (run >= 4) res.contraction = true;
  }
  rep << (res.contraction ? "contraction observed" : "no contraction over 4 consecutive iterates") << "\n";
  res.report = rep.str();
  return res;
}

std::vector<double> contraction_ratios(const PicardResult& r) {
  std::vector<double> out;
  for (std::size_t i = 2; i < r.states.size(); ++i) {
    const double prev = r.states[i - 1].diff_norm;
    out.push_back(prev > 0.0 ? r.states[i].diff_norm / prev : 0.0);
  }
  return out;
}

}  // namespace dlab
