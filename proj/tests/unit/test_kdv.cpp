#include <doctest.h>

#include <cmath>
#include <random>

#include "dlab/errors.hpp"
#include "dlab/kdv/flow.hpp"
#include "dlab/kdv/gauge.hpp"
#include "dlab/kdv/picard.hpp"
#include "oracles/oracles.hpp"

using namespace dlab;

namespace {

double n5(int n) { return std::pow(static_cast<double>(n), 5); }

FourierSeries random_real_series(int band, double amp, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  FourierSeries f(Torus::TwoPi, band);
  f.at(0) = amp * g(rng);
  for (int n = 1; n <= band; ++n) {
    const cplx c(amp * g(rng), amp * g(rng));
    f.at(n) = c;
    f.at(-n) = std::conj(c);
  }
  return f;
}

cplx term(const HarmonicTrajectory& u, int n, int j, double lambda) {
  for (const auto& t : u.mode_terms(n))
    if (t.j == j && t.lambda == lambda) return t.c;
  return {};
}

}  // namespace

TEST_CASE("linear flow examples") {
  std::mt19937_64 rng(1);
  const auto phi = random_real_series(6, 1.0, rng);
  CHECK(linear_flow(phi, 0.0) == phi);
  for (double s : {0.0, 0.5, 1.0, 2.5})
    for (double t : {0.1, 3.7, 1000.0})
      CHECK(h_s_norm(linear_flow(phi, t), s) == doctest::Approx(h_s_norm(phi, s)).epsilon(1e-12));
  const int N = 5;
  const double eps = 0.3, s = 0.4, t = 0.123;
  const auto u = linear_flow(two_mode_data(N, s, eps), t);
  const double a = eps * std::pow(N, -s);
  CHECK(std::abs(u[N] - a * std::exp(cplx(0, -n5(N) * t))) < 1e-14);
  CHECK(std::abs(u[-N] - a * std::exp(cplx(0, n5(N) * t))) < 1e-14);
  CHECK_THROWS_AS(linear_flow(FourierSeries(Torus::Unit, 2), 1.0), ConventionMismatch);
}

TEST_CASE("cubic nonlinearity on the two-mode flow") {
  const int N = 7;
  const double eps = 0.5, s = 0.3;
  const auto u0 = linear_flow(two_mode_data(N, s, eps));
  const auto w = nonlinear_term(u0, NonlinearitySpec::monomial_p1(2));
  const cplx A = cplx(0, 1) * std::pow(eps, 3) * std::pow(N, 1 - 3 * s);
  CHECK(w.size() == 4);
  CHECK(std::abs(term(w, N, 0, -n5(N)) - A) < 1e-15);
  CHECK(std::abs(term(w, -N, 0, n5(N)) + A) < 1e-15);
  CHECK(std::abs(term(w, 3 * N, 0, -3 * n5(N)) - A) < 1e-15);
  CHECK(std::abs(term(w, -3 * N, 0, 3 * n5(N)) + A) < 1e-15);
}

TEST_CASE("gradient-squared nonlinearity on the two-mode flow") {
  const int N = 6;
  const double eps = 0.7, s = 0.9;
  const auto u0 = linear_flow(two_mode_data(N, s, eps));
  const auto w = nonlinear_term(u0, NonlinearitySpec::monomial_p2(1));
  const double A = std::pow(eps, 3) * std::pow(N, 2 - 3 * s);
  CHECK(w.size() == 4);
  CHECK(std::abs(term(w, N, 0, -n5(N)) - A) < 1e-14);
  CHECK(std::abs(term(w, -N, 0, n5(N)) - A) < 1e-14);
  CHECK(std::abs(term(w, 3 * N, 0, -3 * n5(N)) + A) < 1e-14);
  CHECK(std::abs(term(w, -3 * N, 0, 3 * n5(N)) + A) < 1e-14);
}

TEST_CASE("nonlinearity of a constant vanishes") {
  const auto c = FourierSeries::mode(Torus::TwoPi, 0, 0.7);
  NonlinearitySpec spec;
  spec.p1 = {0.5, 1.0, -2.0};
  spec.p2 = {1.0, 3.0};
  const auto plain = nonlinear_term(c, spec);
  for (const auto& x : plain.coefficients()) CHECK(x == cplx{});
  spec.mean_removed = true;
  const auto removed = nonlinear_term(c, spec);
  for (const auto& x : removed.coefficients()) CHECK(x == cplx{});
}

TEST_CASE("slice and trajectory nonlinearities agree") {
  std::mt19937_64 rng(2);
  const auto phi = random_real_series(3, 0.2, rng);
  const auto u = linear_flow(phi);
  NonlinearitySpec spec;
  spec.p1 = {0.0, 0.5, 1.0};
  spec.p2 = {0.3, 1.0};
  spec.mean_removed = true;
  const double t = 0.37;
  const auto a = nonlinear_term(u, spec).at(t);
  const auto b = nonlinear_term(u.at(t), spec);
  CHECK(h_s_norm(a - b, 0.0) < 1e-13);
}

TEST_CASE("Duhamel examples") {
  CHECK(duhamel(HarmonicTrajectory(Torus::TwoPi)).empty());
  const int N = 3;
  HarmonicTrajectory res(Torus::TwoPi);
  res.add(N, 0, -n5(N), 1.0);
  const auto d = duhamel(res);
  REQUIRE(d.size() == 1);
  CHECK(term(d, N, 1, -n5(N)) == cplx(-1.0, 0.0));

  HarmonicTrajectory w(Torus::TwoPi);
  const double lambda = 17.5;
  w.add(N, 0, lambda, 1.0);
  const auto dw = duhamel(w);
  for (double t : {0.01, 0.3, 2.0}) {
    const double mu = lambda + n5(N);
    const cplx expect = -std::exp(cplx(0, -n5(N) * t)) * (std::exp(cplx(0, mu * t)) - 1.0) / cplx(0, mu);
    CHECK(std::abs(dw.at(t)[N] - expect) < 1e-15);
  }
}

TEST_CASE("Duhamel solves the forced linear equation term by term") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> mode(-5, 5), pw(0, 3);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    HarmonicTrajectory w(Torus::TwoPi);
    for (int i = 0; i < 12; ++i) {
      const int n = mode(rng);
      double lambda = u(rng);
      if (i % 4 == 0) lambda = -n5(n);                 // resonant
      if (i % 4 == 1) lambda = -n5(n) + 3e-10;         // near resonant
      w.add(n, pw(rng), lambda, {u(rng), u(rng)});
    }
    const auto d = duhamel(w);
    auto r = time_derivative(d);
    r += fifth_derivative(d);
    r += w;
    double scale = 0.0;
    for (const auto& t : w.terms()) scale = std::max(scale, std::abs(t.c));
    // near-resonant terms carry a shifted frequency, so compare values rather than terms
    for (double t : {0.05, 0.5, 1.3}) CHECK(h_s_norm(r.at(t), 0.0) <= 1e-9 * scale);
    // D(0) = 0
    CHECK(h_s_norm(d.at(0.0), 0.0) <= 1e-12 * scale);
  }
}

TEST_CASE("time integral differentiates back") {
  HarmonicTrajectory f(Torus::TwoPi);
  f.add(0, 2, 3.0, {1.0, -2.0});
  f.add(0, 0, 0.0, 4.0);
  f.add(1, 1, -1e-12, 1.0);
  const auto F = time_integral(f);
  for (double t : {0.0, 0.2, 1.5}) {
    const double h = 1e-5;
    const cplx fd = (F.at(t + h)[0] - F.at(t - h)[0]) / (2 * h);
    CHECK(std::abs(fd - f.at(t)[0]) < 1e-7);
  }
  CHECK(std::abs(F.at(0.0)[0]) < 1e-15);
}

TEST_CASE("first iterate: cubic closed form") {
  for (int N : {4, 8, 16, 32, 64})
    for (double s : {0.3, 0.5, 1.0}) {
      const double eps = 1.0, t = 0.375;  // dyadic, so N^5 t is exact
      const auto u1 = first_iterate(two_mode_data(N, s, eps), NonlinearitySpec::monomial_p1(2));
      const cplx expect = (eps * std::pow(N, -s) - cplx(0, 1) * std::pow(eps, 3) * std::pow(N, 1 - 3 * s) * t) *
                          std::exp(cplx(0, -n5(N) * t));
      CAPTURE(N);
      CHECK(std::abs(u1.at(t)[N] - expect) <= 1e-10 * std::abs(expect));
    }
}

TEST_CASE("first iterate: gradient-squared secular term is real") {
  // Direct integration of the real forcing eps^3 N^{2-3s} e^{iNx} e^{-iN^5 t}.
  for (int N : {4, 8, 16, 32, 64})
    for (double s : {0.3, 0.5, 1.0}) {
      const double eps = 1.0, t = 0.375;  // dyadic, so N^5 t is exact
      const auto u1 = first_iterate(two_mode_data(N, s, eps), NonlinearitySpec::monomial_p2(1));
      const cplx expect = (eps * std::pow(N, -s) - std::pow(eps, 3) * std::pow(N, 2 - 3 * s) * t) *
                          std::exp(cplx(0, -n5(N) * t));
      CAPTURE(N);
      CHECK(std::abs(u1.at(t)[N] - expect) <= 1e-10 * std::abs(expect));
    }
}

TEST_CASE("first iterate with zero nonlinearity is the linear flow") {
  std::mt19937_64 rng(4);
  const auto phi = random_real_series(4, 1.0, rng);
  const auto u1 = first_iterate(phi, NonlinearitySpec{});
  CHECK(h_s_norm(u1.at(0.5) - linear_flow(phi, 0.5), 0.0) < 1e-15);
}

TEST_CASE("real data stays real") {
  std::mt19937_64 rng(5);
  const auto phi = random_real_series(3, 0.1, rng);
  NonlinearitySpec spec;
  spec.p1 = {0.0, 1.0, 1.0};
  spec.p2 = {0.5};
  const auto u1 = first_iterate(phi, spec);
  CHECK(conjugate_symmetric(u1, 0.0));
  PicardOptions opt;
  opt.max_iter = 2;
  const auto r = picard_solve(phi, spec, opt);
  REQUIRE_FALSE(r.sampled);
  for (const auto& st : r.states) {
    CAPTURE(st.j);
    CHECK(conjugate_symmetric(std::get<HarmonicTrajectory>(st.trajectory), 0.0));
  }
}

TEST_CASE("ill-posedness scan") {
  const auto tiny = illposedness_scan(NonlinearitySpec::monomial_p1(2), 0.3, 1.0, 1e-9, {16, 32, 64, 128});
  // only the weight <N>^s = (1 + N)^s against N^{-s} is left, which drifts like s/N
  CHECK(std::abs(tiny.slope) < 0.02);
  CHECK(tiny.warning.has_value());
  const auto fit = illposedness_scan(NonlinearitySpec::monomial_p1(2), 0.3, 1.0, 4.0, {16, 32, 64, 128, 256});
  CHECK_FALSE(fit.warning.has_value());
  CHECK(fit.slope == doctest::Approx(0.4).epsilon(0.05 / 0.4));
  CHECK_THROWS_AS(illposedness_scan(NonlinearitySpec::monomial_p1(2), 0.3, 1.0, 1.0, {16}), ConfigError);
}

TEST_CASE("Picard trivial cases") {
  PicardOptions opt;
  opt.max_iter = 3;
  const auto zero = picard_solve(FourierSeries(Torus::TwoPi, 2), NonlinearitySpec::monomial_p1(2), opt);
  for (const auto& st : zero.states) CHECK(std::get<HarmonicTrajectory>(st.trajectory).empty());
  const auto c = picard_solve(FourierSeries::mode(Torus::TwoPi, 0, 0.4), NonlinearitySpec::monomial_p1(2, true), opt);
  for (const auto& st : c.states) {
    CHECK(std::abs(slice(st.trajectory, opt.delta)[0] - 0.4) == 0.0);
    CHECK(slice(st.trajectory, opt.delta).band() == 0);
  }
  CHECK_THROWS_AS(picard_solve(FourierSeries(Torus::TwoPi, 1), NonlinearitySpec{}, PicardOptions{.delta = 0.0}),
                  ConfigError);
}

TEST_CASE("Picard iterates conserve the mean for derivative nonlinearities") {
  std::mt19937_64 rng(6);
  const auto phi = random_real_series(2, 0.2, rng);
  NonlinearitySpec spec;
  spec.p1 = {0.3, 0.0, 1.0};
  PicardOptions opt;
  opt.max_iter = 4;
  opt.delta = 0.01;
  const auto r = picard_solve(phi, spec, opt);
  for (const auto& st : r.states)
    for (double t : time_grid(opt.delta, 9))
      CHECK(std::abs(slice(st.trajectory, t)[0] - phi[0]) < 1e-10);
}

TEST_CASE("Picard contraction and agreement with a classical time stepper") {
  FourierSeries phi(Torus::TwoPi, 1);
  phi.at(1) = 0.1;
  phi.at(-1) = 0.1;
  PicardOptions opt;
  opt.delta = 1e-3;
  opt.s = 1.0;
  opt.max_iter = 8;
  opt.band_cap = 27;
  const auto r = picard_solve(phi, NonlinearitySpec::monomial_p1(2), opt);
  CHECK(r.contraction);
  CHECK_FALSE(r.sampled);
  const auto final_slice = slice(r.states.back().trajectory, opt.delta);
  std::vector<cplx> u0(2 * 27 + 1);
  u0[27 + 1] = 0.1;
  u0[27 - 1] = 0.1;
  const auto ref = oracle::ifrk4_solve(u0, {0.0, 0.0, 1.0}, {}, false, opt.delta, 10 * (opt.diag_samples - 1));
  FourierSeries rs(Torus::TwoPi, 27);
  for (int n = -27; n <= 27; ++n) rs.at(n) = ref[static_cast<std::size_t>(n + 27)];
  const double err = h_s_norm(final_slice.widened(std::max(27, final_slice.band())) - rs, 1.0);
  CAPTURE(err);
  CHECK(err < 1e-6);
  CHECK(err < 1e-12);
}

TEST_CASE("sampled Picard fallback tracks the exact iteration") {
  std::mt19937_64 rng(7);
  const auto phi = random_real_series(1, 0.1, rng);
  PicardOptions opt;
  opt.delta = 1e-3;
  opt.band_cap = 9;
  opt.max_iter = 3;
  const auto exact = picard_solve(phi, NonlinearitySpec::monomial_p1(2), opt);
  opt.term_cap = 4;
  const auto samp = picard_solve(phi, NonlinearitySpec::monomial_p1(2), opt);
  CHECK(samp.sampled);
  CHECK(samp.sampled_step == doctest::Approx(opt.delta / opt.sampled_steps));
  CHECK(samp.report.find("switching") != std::string::npos);
  for (double t : {0.0, 0.25e-3, 0.6e-3, 1e-3}) {
    const auto a = slice(exact.states.back().trajectory, t);
    const auto b = slice(samp.states.back().trajectory, t);
    CHECK(h_s_norm(a.widened(std::max(a.band(), b.band())) - b.widened(std::max(a.band(), b.band())), 1.0) < 1e-10);
  }
}

TEST_CASE("gauge transform trivial cases") {
  FourierSeries phi(Torus::TwoPi, 1);
  phi.at(1) = 0.3;
  phi.at(-1) = 0.3;
  const auto v = linear_flow(phi);
  const auto g = gauge_transform(v, 1);
  for (double t : {0.0, 0.4, 1.0}) {
    CHECK(g.theta(t) == 0.0);
    CHECK(h_s_norm(g.at(t) - v.at(t), 0.0) == 0.0);
  }
  HarmonicTrajectory c(Torus::TwoPi);
  c.add(0, 0, 0.0, 0.5);
  const auto gc = gauge_transform(c, 3);
  CHECK(gc.theta(2.0) == doctest::Approx(2 * std::numbers::pi * 0.125 * 2.0).epsilon(1e-15));
  CHECK(gc.at(2.0)[0] == cplx(0.5, 0.0));
}

TEST_CASE("gauge transform maps the mean-removed flow to the full equation") {
  FourierSeries phi(Torus::TwoPi, 1);
  phi.at(0) = 0.05;
  phi.at(1) = {0.1, 0.02};
  phi.at(-1) = {0.1, -0.02};
  PicardOptions opt;
  opt.delta = 1e-3;
  opt.band_cap = 27;
  opt.max_iter = 8;
  const auto v = picard_solve(phi, NonlinearitySpec::monomial_p1(2, true), opt);
  REQUIRE_FALSE(v.sampled);
  const auto u = gauge_transform(v.states.back().trajectory, 2);
  const auto times = time_grid(opt.delta, 33);
  CHECK(residual(u, NonlinearitySpec::monomial_p1(2), times) < 1e-6);
  // without the gauge the full equation is not satisfied
  const auto& vt = std::get<HarmonicTrajectory>(v.states.back().trajectory);
  CHECK(residual(vt, NonlinearitySpec::monomial_p1(2), times) > 1e-4);
  CHECK(residual(vt, NonlinearitySpec::monomial_p1(2, true), times) < 1e-12);
}

TEST_CASE("gauge transform of a sampled trajectory") {
  FourierSeries phi(Torus::TwoPi, 1);
  phi.at(0) = 0.05;
  phi.at(1) = 0.1;
  phi.at(-1) = 0.1;
  PicardOptions opt;
  opt.band_cap = 9;
  opt.max_iter = 4;
  opt.term_cap = 4;
  const auto v = picard_solve(phi, NonlinearitySpec::monomial_p1(2, true), opt);
  REQUIRE(v.sampled);
  const auto u = gauge_transform(v.states.back().trajectory, 2);
  CHECK(u.difference_step() > 0.0);
  CHECK(residual(u, NonlinearitySpec::monomial_p1(2), time_grid(opt.delta, 17)) < 1e-6);
}
