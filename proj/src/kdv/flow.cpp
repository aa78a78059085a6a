#include "dlab/kdv/flow.hpp"

#include <cmath>
#include <limits>

#include "dlab/errors.hpp"

namespace dlab {

bool NonlinearitySpec::is_zero() const {
  for (double c : p1)
    if (c != 0.0) return false;
  for (double c : p2)
    if (c != 0.0) return false;
  return true;
}

NonlinearitySpec NonlinearitySpec::monomial_p1(int k, bool mean_removed) {
  NonlinearitySpec s;
  s.p1.assign(static_cast<std::size_t>(k + 1), 0.0);
  s.p1[static_cast<std::size_t>(k)] = 1.0;
  s.mean_removed = mean_removed;
  return s;
}

NonlinearitySpec NonlinearitySpec::monomial_p2(int k) {
  NonlinearitySpec s;
  s.p2.assign(static_cast<std::size_t>(k + 1), 0.0);
  s.p2[static_cast<std::size_t>(k)] = 1.0;
  return s;
}

namespace {

double fifth(int n) {
  const double d = n;
  return d * d * d * d * d;
}

void require_two_pi(Torus t, const char* op) {
  if (t != Torus::TwoPi) throw ConventionMismatch(std::string(op) + ": the flow is defined on the 2 pi torus");
}

// Mean of u^k as a removable part: constant mode times 2 pi (length measure).
FourierSeries mean_part(const FourierSeries& f) {
  return FourierSeries::mode(f.torus(), 0, kTwoPi * f[0]);
}
HarmonicTrajectory mean_part(const HarmonicTrajectory& f) {
  return f.zero_mode() * cplx(kTwoPi, 0.0);
}

FourierSeries unit_of(const FourierSeries& f) { return FourierSeries::mode(f.torus(), 0, 1.0); }
HarmonicTrajectory unit_of(const HarmonicTrajectory& f) {
  HarmonicTrajectory one(f.torus());
  one.add(0, 0, 0.0, 1.0);
  return one;
}

bool empty_like(const FourierSeries& f) {
  for (const auto& c : f.coefficients())
    if (c != cplx{}) return false;
  return true;
}
bool empty_like(const HarmonicTrajectory& f) { return f.empty(); }

double product_work(const FourierSeries& a, const FourierSeries& b) {
  return static_cast<double>(2 * a.band() + 1) * static_cast<double>(2 * b.band() + 1);
}
double product_work(const HarmonicTrajectory& a, const HarmonicTrajectory& b) {
  return static_cast<double>(a.size()) * static_cast<double>(b.size());
}

template <class T>
T nonlinear_impl(const T& u, const NonlinearitySpec& spec, int band_cap, double work_cap) {
  double work = 0.0;
  auto mul = [&](const T& a, const T& b) {
    work += product_work(a, b);
    if (work > work_cap) throw BudgetExceeded("nonlinear_term: product work over the cap");
    return product(a, b, band_cap);
  };
  T result(u.torus());
  if (spec.is_zero() || empty_like(u)) return result;
  const T ux = spatial_derivative(u);
  const std::size_t kmax = std::max(spec.p1.size(), spec.p2.size());
  std::vector<T> pw;
  pw.push_back(unit_of(u));
  for (std::size_t k = 1; k < kmax; ++k) pw.push_back(mul(pw.back(), u));
  T p1(u.torus()), p2(u.torus());
  bool has1 = false, has2 = false;
  for (std::size_t k = 0; k < spec.p1.size(); ++k) {
    if (spec.p1[k] == 0.0) continue;
    T term = pw[k];
    if (spec.mean_removed) term -= mean_part(pw[k]);
    p1 += term * cplx(spec.p1[k], 0.0);
    has1 = true;
  }
  for (std::size_t k = 0; k < spec.p2.size(); ++k) {
    if (spec.p2[k] == 0.0) continue;
    p2 += pw[k] * cplx(spec.p2[k], 0.0);
    has2 = true;
  }
  if (has1) result += mul(p1, ux);
  if (has2) result += mul(mul(p2, ux), ux);
  return result;
}

// Adds int_0^t tau^j e^{i mu tau} dtau, times c, to `out`. Oscillating terms
// get frequency `freq` (mu plus the caller's shift), the boundary constant
// gets `base` (the shift itself).
void integrate_term(HarmonicTrajectory& out, int n, int j, double mu, double freq, double base, cplx c) {
  if (mu == 0.0) {
    out.add(n, j + 1, base, c / static_cast<double>(j + 1));
    return;
  }
  const cplx im(0.0, mu);
  if (std::abs(mu) < kResonanceTol) {
    // sum_m (i mu)^m / m! t^{j+m+1} / (j+m+1); four terms exhaust double precision
    cplx f = 1.0;
    for (int m = 0; m < 4; ++m) {
      out.add(n, j + m + 1, base, c * f / static_cast<double>(j + m + 1));
      f *= im / static_cast<double>(m + 1);
    }
    return;
  }
  // sum_k (-1)^k j!/(j-k)! t^{j-k} e^{i mu t} / (i mu)^{k+1} - (-1)^j j! / (i mu)^{j+1}
  cplx coef = c / im;
  for (int k = 0; k <= j; ++k) {
    out.add(n, j - k, freq, coef);
    coef *= -static_cast<double>(j - k) / im;
  }
  double fact = 1.0;
  for (int k = 2; k <= j; ++k) fact *= k;
  out.add(n, 0, base, -c * ((j % 2 == 0) ? fact : -fact) / std::pow(im, j + 1));
}

}  // namespace

FourierSeries linear_flow(const FourierSeries& phi, double t) {
  require_two_pi(phi.torus(), "linear_flow");
  FourierSeries r = phi;
  for (int n = -phi.band(); n <= phi.band(); ++n) {
    // n^5 t reduced mod 2 pi in long double keeps the phase accurate for large n
    const long double ph = std::fmod(-static_cast<long double>(fifth(n)) * t, 2.0L * std::numbers::pi_v<long double>);
    r.at(n) = phi[n] * cplx(std::cos(static_cast<double>(ph)), std::sin(static_cast<double>(ph)));
  }
  return r;
}

HarmonicTrajectory linear_flow(const FourierSeries& phi) {
  require_two_pi(phi.torus(), "linear_flow");
  HarmonicTrajectory u(Torus::TwoPi);
  for (int n = -phi.band(); n <= phi.band(); ++n) u.add(n, 0, -fifth(n), phi[n]);
  return u;
}

FourierSeries nonlinear_term(const FourierSeries& u, const NonlinearitySpec& spec, int band_cap) {
  require_two_pi(u.torus(), "nonlinear_term");
  return nonlinear_impl(u, spec, band_cap, std::numeric_limits<double>::infinity());
}

HarmonicTrajectory nonlinear_term(const HarmonicTrajectory& u, const NonlinearitySpec& spec,
                                  int band_cap, double work_cap) {
  require_two_pi(u.torus(), "nonlinear_term");
  return nonlinear_impl(u, spec, band_cap, work_cap);
}

HarmonicTrajectory time_integral(const HarmonicTrajectory& f) {
  HarmonicTrajectory out(f.torus());
  for (const auto& t : f.terms()) integrate_term(out, t.n, t.j, t.lambda, t.lambda, 0.0, t.c);
  return conjugate_symmetric(f, 0.0) ? symmetrized(out) : out;
}

HarmonicTrajectory duhamel(const HarmonicTrajectory& w) {
  require_two_pi(w.torus(), "duhamel");
  HarmonicTrajectory out(Torus::TwoPi);
  for (const auto& t : w.terms()) {
    const double n5 = fifth(t.n);
    integrate_term(out, t.n, t.j, t.lambda + n5, t.lambda, -n5, -t.c);
  }
  return conjugate_symmetric(w, 0.0) ? symmetrized(out) : out;
}

HarmonicTrajectory first_iterate(const FourierSeries& phi, const NonlinearitySpec& spec, int band_cap) {
  const auto u0 = linear_flow(phi);
  return u0 + duhamel(nonlinear_term(u0, spec, band_cap));
}

FourierSeries two_mode_data(int N, double s, double eps) {
  if (N < 1) throw ConfigError("two-mode data: N must be positive");
  FourierSeries phi(Torus::TwoPi, N);
  const double a = eps * std::pow(static_cast<double>(N), -s);
  phi.at(N) = a;
  phi.at(-N) = a;
  return phi;
}

IllposedFit illposedness_scan(const NonlinearitySpec& spec, double s, double eps, double t,
                              const std::vector<int>& Ns, double min_dominance) {
  if (Ns.size() < 2) throw ConfigError("illposedness_scan: need at least two values of N");
  IllposedFit fit;
  std::vector<double> xs, ys;
  double worst = std::numeric_limits<double>::infinity();
  int worst_N = 0;
  for (int N : Ns) {
    const auto phi = two_mode_data(N, s, eps);
    const auto u1 = first_iterate(phi, spec, std::max(kDefaultBandCap, 8 * N));
    const auto slice = u1.at(t);
    const cplx lin = linear_flow(phi, t)[N];
    const double dom = std::abs(slice[N] - lin) / std::abs(lin);
    fit.rows.push_back({N, h_s_norm(slice, s), dom});
    xs.push_back(N);
    ys.push_back(fit.rows.back().norm);
    if (dom < worst) {
      worst = dom;
      worst_N = N;
    }
  }
  fit.slope = fit_loglog(xs, ys).slope;
  if (worst < min_dominance)
    fit.warning = "secular term does not dominate: nonlinear/linear ratio " + std::to_string(worst) +
                  " at N=" + std::to_string(worst_N) + " (increase t or eps)";
  return fit;
}

std::vector<double> time_grid(double delta, int count) {
  if (count < 2) throw ConfigError("time grid: need at least two points");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g[static_cast<std::size_t>(i)] = delta * i / (count - 1);
  return g;
}

double residual(const HarmonicTrajectory& u, const NonlinearitySpec& spec,
                const std::vector<double>& times) {
  auto r = time_derivative(u);
  r += fifth_derivative(u);
  r += nonlinear_term(u, spec, kDefaultBandCap);
  double sup = 0.0;
  for (double t : times) sup = std::max(sup, h_s_norm(r.at(t), 0.0));
  return sup;
}

}  // namespace dlab
