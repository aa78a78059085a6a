#include <doctest.h>

#include <cmath>
#include <random>

#include "dlab/errors.hpp"
#include "dlab/spectral/fourier_series.hpp"
#include "dlab/spectral/harmonic_trajectory.hpp"
#include "oracles/oracles.hpp"

using namespace dlab;

namespace {

FourierSeries random_series(std::mt19937_64& rng, int band, bool real) {
  std::normal_distribution<double> g;
  FourierSeries f(Torus::TwoPi, band);
  for (int n = -band; n <= band; ++n) f.at(n) = {g(rng), g(rng)};
  if (real) {
    f.at(0) = f[0].real();
    for (int n = 1; n <= band; ++n) f.at(-n) = std::conj(f[n]);
  }
  return f;
}

}  // namespace

TEST_CASE("h_s_norm of a constant mode is one for every s") {
  const auto f = FourierSeries::mode(Torus::TwoPi, 0, 1.0);
  for (double s : {-1.0, 0.0, 0.5, 3.0}) CHECK(h_s_norm(f, s) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("h_s_norm of the two-mode datum at N=8, s=1/2 is 1.5") {
  const int N = 8;
  const double s = 0.5, amp = std::pow(N, -s);
  FourierSeries phi(Torus::TwoPi, N);
  phi.at(N) = amp;
  phi.at(-N) = amp;
  CHECK(h_s_norm(phi, s) == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("Parseval: s = 0 gives the l2 coefficient norm") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> band(0, 40);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = random_series(rng, band(rng), false);
    double l2 = 0.0;
    for (auto c : f.coefficients()) l2 += std::norm(c);
    l2 = std::sqrt(l2);
    REQUIRE(std::abs(h_s_norm(f, 0.0) - l2) <= 1e-12 * l2);
  }
}

TEST_CASE("h_s_norm is zero only for the zero series") {
  CHECK(h_s_norm(FourierSeries(Torus::TwoPi, 5), 1.0) == 0.0);
  CHECK(h_s_norm(FourierSeries::mode(Torus::TwoPi, 3, 1e-200), 2.0) > 0.0);
}

TEST_CASE("product of e^{ix} with itself is e^{2ix}") {
  const auto f = FourierSeries::mode(Torus::TwoPi, 1, 1.0);
  const auto p = product(f, f);
  CHECK(p.band() == 2);
  CHECK(p[2] == cplx(1.0, 0.0));
  for (int n = -2; n <= 1; ++n) CHECK(p[n] == cplx{});
}

TEST_CASE("spatial derivative multiplies by i n, or 2 pi i n on the unit torus") {
  const int N = 7;
  const auto d = spatial_derivative(FourierSeries::mode(Torus::TwoPi, N, 1.0));
  CHECK(d[N] == cplx(0.0, N));
  const auto du = spatial_derivative(FourierSeries::mode(Torus::Unit, N, 1.0));
  CHECK(du[N].imag() == doctest::Approx(kTwoPi * N));
}

TEST_CASE("product band is the sum of bands and respects the hard cap") {
  std::mt19937_64 rng(3);
  const auto f = random_series(rng, 5, false), g = random_series(rng, 9, false);
  CHECK(product(f, g).band() == 14);
  CHECK_THROWS_AS(product(f, g, 13), BandOverflow);
}

TEST_CASE("cross-convention arithmetic is rejected") {
  const auto a = FourierSeries::mode(Torus::TwoPi, 1, 1.0);
  const auto b = FourierSeries::mode(Torus::Unit, 1, 1.0);
  CHECK_THROWS_AS(product(a, b), ConventionMismatch);
  CHECK_THROWS_AS(a + b, ConventionMismatch);
  CHECK((a + b.relabel(Torus::TwoPi))[1] == cplx(2.0, 0.0));
}

TEST_CASE("products and derivatives of real series stay exactly conjugate-symmetric") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_series(rng, 1 + trial % 13, true);
    const auto g = random_series(rng, 1 + trial % 7, true);
    REQUIRE(product(f, g).conjugate_symmetric(0.0));
    REQUIRE(spatial_derivative(f).conjugate_symmetric(0.0));
    REQUIRE(product(product(f, g), spatial_derivative(g)).conjugate_symmetric(0.0));
  }
}

TEST_CASE("convolution matches pointwise multiplication on a 64-point grid") {
  std::mt19937_64 rng(17);
  const int M = 64;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_series(rng, 8, false), g = random_series(rng, 8, false);
    std::vector<oracle::cplx> fx(M), gx(M), px(M);
    for (int k = 0; k < M; ++k) {
      const double x = kTwoPi * k / M;
      for (int n = -8; n <= 8; ++n) {
        const oracle::cplx e(std::cos(n * x), std::sin(n * x));
        fx[k] += f[n] * e;
        gx[k] += g[n] * e;
      }
      px[k] = fx[k] * gx[k];
    }
    const auto coef = oracle::naive_dft(px, -1);
    const auto p = product(f, g);
    double scale = 0.0;
    for (auto c : p.coefficients()) scale = std::max(scale, std::abs(c));
    for (int n = -16; n <= 16; ++n)
      REQUIRE(std::abs(coef[(n + M) % M] / double(M) - p[n]) <= 1e-10 * scale);
  }
}

TEST_CASE("cubic term of the two-mode datum has exactly four harmonics") {
  const int N = 8;
  const double eps = 0.5, s = 0.25;
  const double a = eps * std::pow(N, -s);
  const double n5 = std::pow(N, 5);
  HarmonicTrajectory u0;
  u0.add(N, 0, -n5, a);
  u0.add(-N, 0, n5, a);
  const auto w = product(product(u0, u0), spatial_derivative(u0));
  const double k = std::pow(eps, 3) * std::pow(N, 1 - 3 * s);
  const auto terms = w.terms();
  REQUIRE(terms.size() == 4);
  struct Expect {
    int n;
    double lambda;
    double sign;
  };
  for (const Expect& e : {Expect{N, -n5, 1}, Expect{-N, n5, -1}, Expect{3 * N, -3 * n5, 1},
                          Expect{-3 * N, 3 * n5, -1}}) {
    const auto m = w.mode_terms(e.n);
    REQUIRE(m.size() == 1);
    CHECK(m[0].j == 0);
    CHECK(m[0].lambda == e.lambda);
    CHECK(m[0].c.real() == 0.0);
    CHECK(m[0].c.imag() == doctest::Approx(e.sign * k).epsilon(1e-14));
  }
}

TEST_CASE("JSON round trip is exact") {
  std::mt19937_64 rng(23);
  auto f = random_series(rng, 12, false);
  f.at(3) = {};
  const auto g = fourier_series_from_json(to_json(f));
  CHECK(g == f);
  CHECK(to_json(f)["coefficients"].size() == 24);
  const auto h = fourier_series_from_json(nlohmann::json::parse(to_json(f).dump()));
  CHECK(h == f);
  CHECK_THROWS_AS(fourier_series_from_json(nlohmann::json{{"band", 2}}), ConfigError);
}

TEST_CASE("truncation reports discarded mass") {
  FourierSeries f(Torus::TwoPi, 4);
  f.at(4) = 3.0;
  f.at(-3) = 4.0;
  f.at(1) = 1.0;
  double lost = 0.0;
  const auto t = f.truncated(2, &lost);
  CHECK(lost == doctest::Approx(5.0));
  CHECK(t[1] == cplx(1.0));
  CHECK(t.band() == 2);
  CHECK(f.trimmed().band() == 4);
}
