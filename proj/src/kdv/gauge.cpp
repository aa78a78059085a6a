#include "dlab/kdv/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

cplx shift_phase(int n, double theta) { return {std::cos(n * theta), -std::sin(n * theta)}; }

}  // namespace

GaugedTrajectory::GaugedTrajectory(Trajectory v, int k) : v_(std::move(v)), k_(k) {
  if (k < 0) throw ConfigError("gauge: k must be nonnegative");
  if (const auto* hv = std::get_if<HarmonicTrajectory>(&v_)) {
    HarmonicTrajectory p(Torus::TwoPi);
    p.add(0, 0, 0.0, 1.0);
    for (int i = 0; i < k; ++i) p = product(p, *hv, std::max(kDefaultBandCap, (k + 1) * hv->band()));
    rate_ = p.zero_mode() * cplx(kTwoPi, 0.0);
    theta_ = time_integral(rate_);
  } else {
    const auto& s = std::get<SampledTrajectory>(v_);
    std::vector<double> rate;
    for (const auto& f : s.frames) {
      FourierSeries p = FourierSeries::mode(Torus::TwoPi, 0, 1.0);
      for (int i = 0; i < k; ++i) p = product(p, f, std::max(kDefaultBandCap, (k + 1) * f.band()));
      rate.push_back(kTwoPi * p[0].real());
    }
    // cumulative Simpson, three-point rule on a trailing odd interval
    const double h = s.step;
    theta_samples_.assign(rate.size(), 0.0);
    double even = 0.0;
    for (std::size_t i = 1; i < rate.size(); ++i) {
      if (i % 2 == 0) {
        even += h / 3.0 * (rate[i - 2] + 4.0 * rate[i - 1] + rate[i]);
        theta_samples_[i] = even;
      } else if (i + 1 < rate.size()) {
        theta_samples_[i] = even + h / 12.0 * (5.0 * rate[i - 1] + 8.0 * rate[i] - rate[i + 1]);
      } else {
        theta_samples_[i] = even + h / 12.0 * (-rate[i - 2] + 8.0 * rate[i - 1] + 5.0 * rate[i]);
      }
    }
    fd_step_ = h;
  }
}

double GaugedTrajectory::theta(double t) const {
  if (std::holds_alternative<HarmonicTrajectory>(v_)) return theta_.at(t)[0].real();
  const auto& s = std::get<SampledTrajectory>(v_);
  const double x = std::clamp(t / s.step, 0.0, static_cast<double>(theta_samples_.size() - 1));
  const std::size_t k = std::min(static_cast<std::size_t>(x), theta_samples_.size() - 2);
  const double f = x - static_cast<double>(k);
  return (1 - f) * theta_samples_[k] + f * theta_samples_[k + 1];
}

double GaugedTrajectory::theta_rate(double t) const {
  if (std::holds_alternative<HarmonicTrajectory>(v_)) return rate_.at(t)[0].real();
  FourierSeries p = FourierSeries::mode(Torus::TwoPi, 0, 1.0);
  const auto f = slice(v_, t);
  for (int i = 0; i < k_; ++i) p = product(p, f, std::max(kDefaultBandCap, (k_ + 1) * f.band()));
  return kTwoPi * p[0].real();
}

FourierSeries GaugedTrajectory::at(double t) const {
  FourierSeries u = slice(v_, t);
  const double th = theta(t);
  for (int n = -u.band(); n <= u.band(); ++n) u.at(n) *= shift_phase(n, th);
  return u;
}

FourierSeries GaugedTrajectory::time_derivative_at(double t) const {
  if (const auto* h = std::get_if<HarmonicTrajectory>(&v_)) {
    FourierSeries dv = dlab::time_derivative(*h).at(t);
    const FourierSeries v = h->at(t);
    const int band = std::max(dv.band(), v.band());
    dv = dv.widened(band);
    const double th = theta(t), rate = theta_rate(t);
    for (int n = -band; n <= band; ++n)
      dv.at(n) = (dv[n] - cplx(0.0, n * rate) * v[n]) * shift_phase(n, th);
    return dv;
  }
  const auto& s = std::get<SampledTrajectory>(v_);
  const double T = s.horizon(), h = fd_step_;
  const double lo = std::max(0.0, t - h), hi = std::min(T, t + h);
  FourierSeries d = at(hi) - at(lo);
  d *= cplx(1.0 / (hi - lo), 0.0);
  return d;
}

GaugedTrajectory gauge_transform(const Trajectory& v, int k) { return GaugedTrajectory(v, k); }

double residual(const GaugedTrajectory& u, const NonlinearitySpec& spec, const std::vector<double>& times) {
  double sup = 0.0;
  for (double t : times) {
    const FourierSeries ut = u.at(t);
    FourierSeries r = u.time_derivative_at(t);
    const auto nl = nonlinear_term(ut, spec, kDefaultBandCap);
    const int band = std::max({r.band(), ut.band(), nl.band()});
    r = r.widened(band);
    for (int n = -ut.band(); n <= ut.band(); ++n) {
      const double n5 = static_cast<double>(n) * n * n * n * n;
      r.at(n) += cplx(0.0, n5) * ut[n];
    }
    r += nl.widened(band);
    sup = std::max(sup, h_s_norm(r, 0.0));
  }
  return sup;
}

}  // namespace dlab
