#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <algorithm>
#include <random>

#include "dlab/errors.hpp"
#include "dlab/weyl/kernel.hpp"
#include "dlab/weyl/phi.hpp"
#include "dlab/weyl/rational.hpp"
#include "dlab/weyl/weyl_sum.hpp"
#include "oracles/oracles.hpp"

using namespace dlab;

TEST_CASE("rational approximation examples") {
  auto r = rational_approx(1.0 / 3.0, 10);
  CHECK(r.a == 1);
  CHECK(r.q == 3);
  r = rational_approx(0.0, 10);
  CHECK(r.a == 0);
  CHECK(r.q == 1);
  r = rational_approx(std::numbers::pi - 3.0, 120);
  CHECK(r.a == 16);
  CHECK(r.q == 113);
  r = rational_approx(std::numbers::pi - 3.0, 112);
  CHECK(r.q == 106);
}

TEST_CASE("rational approximation rejects t outside [0,1)") {
  CHECK_THROWS_AS(rational_approx(1.0, 10), DomainError);
  CHECK_THROWS_AS(rational_approx(-0.25, 10), DomainError);
}

TEST_CASE("rational approximations satisfy the Dirichlet inequality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double t = u(rng);
    const std::int64_t qmax = 1 + static_cast<std::int64_t>(rng() % 1000000);
    const auto r = rational_approx(t, qmax);
    REQUIRE(r.q >= 1);
    REQUIRE(r.q <= qmax);
    REQUIRE(satisfies_dirichlet(r));
    // no denominator between q and qmax reaches the Dirichlet bound with a better fit
    if (qmax <= 2000) {
      for (std::int64_t q = r.q + 1; q <= qmax; ++q) {
        const double a = std::round(t * q);
        if (std::gcd(static_cast<std::int64_t>(a), q) != 1) continue;
        CHECK(std::abs(t - a / q) > 0.5 / (static_cast<double>(q) * q) * (1 - 1e-9));
      }
    }
  }
}

TEST_CASE("Weyl sum examples") {
  CHECK(std::abs(weyl_sum(7, 3, 0.0) - cplx(7.0, 0.0)) < 1e-13);
  CHECK(std::abs(weyl_sum(4, 3, 0.5)) < 1e-13);
  CHECK(std::abs(weyl_sum(4, 2, 0.5)) < 1e-13);
}

TEST_CASE("Weyl sums are bounded by N") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 3000);
    const int d = 2 + static_cast<int>(rng() % 3);
    const double p[] = {u(rng), u(rng)};
    const auto s = weyl_sum(N, d, u(rng), p);
    CHECK(std::abs(s) <= static_cast<double>(N) * (1.0 + 1e-14));
  }
}

TEST_CASE("Weyl sum against direct long double summation") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 200);
    const double t = u(rng), x = u(rng);
    long double re = 0, im = 0;
    for (std::int64_t n = 1; n <= N; ++n) {
      const long double nd = static_cast<long double>(n) * n * n;
      const long double ph = std::fmod(t * nd + x * n, 1.0L) * 2.0L * std::numbers::pi_v<long double>;
      re += std::cos(ph);
      im += std::sin(ph);
    }
    const double p[] = {0.0, x};
    const auto s = weyl_sum(N, 3, t, p);
    CHECK(std::abs(s.real() - static_cast<double>(re)) < 1e-11);
    CHECK(std::abs(s.imag() - static_cast<double>(im)) < 1e-11);
  }
}

TEST_CASE("Dirichlet curve kernel basics") {
  CHECK(std::abs(dirichlet_curve_kernel(9, 3, 0.0, 0.0) - cplx(19.0, 0.0)) < 1e-12);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int d : {2, 3, 4, 5}) {
    for (int i = 0; i < 20; ++i) {
      // dyadic points so that 1 - x and 1 - t are exact
      const double x = std::ldexp(static_cast<double>(rng() % (1u << 30)), -30);
      const double t = std::ldexp(static_cast<double>(rng() % (1u << 30)), -30);
      const std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 100);
      const cplx k = dirichlet_curve_kernel(N, d, x, t);
      const cplx km = dirichlet_curve_kernel(N, d, 1.0 - x, 1.0 - t);
      CHECK(std::abs(k - std::conj(km)) < 1e-10);
      // positive n plus mirrored negative n
      const double pp[] = {0.0, x};
      const double pm[] = {0.0, -x};
      const cplx neg = (d % 2 == 1) ? std::conj(weyl_sum(N, d, t, pp)) : weyl_sum(N, d, t, pm);
      CHECK(std::abs(k - (1.0 + weyl_sum(N, d, t, pp) + neg)) < 1e-10);
    }
  }
}

TEST_CASE("bump profile") {
  CHECK(bump::rho(0.0) == 0.0);
  CHECK(bump::rho(1.0) == 0.0);
  CHECK(bump::rho(0.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(bump::phi(0.004) == 0.0);
  CHECK(bump::phi(0.011) == 0.0);
  CHECK(bump::phi(0.0075) > 0.0);
}

TEST_CASE("tabulated bump transform matches a dense trapezoid") {
  for (double eta : {0.0, 0.013, 0.5, 1.0, 2.37, 7.7, 19.05, 40.0, 63.2}) {
    const double ref = oracle::bump_transform_trapezoid(eta, 40000);
    CHECK(std::abs(bump::rho_transform_centered(eta) - ref) < 1e-13);
    CHECK(bump::rho_transform_centered(-eta) == bump::rho_transform_centered(eta));
  }
  CHECK(bump::rho_transform_centered(150.0) == 0.0);
}

TEST_CASE("Phi vanishes off the arcs and is positive on them") {
  const PhiFunction phi(8);
  CHECK(phi.hat0() > 0.0);
  CHECK(phi.eval(0.0) == 0.0);
  CHECK(phi.eval(0.5 - 1e-7) == 0.0);
  // centre of the arc at 1/9
  const double t = 1.0 / 9.0 + 0.0075 / 81.0;
  CHECK(phi.eval(t) == doctest::Approx(bump::phi(0.0075)).epsilon(1e-12));
  CHECK(phi.eval(t + 1.0) == doctest::Approx(phi.eval(t)).epsilon(1e-12));
}

TEST_CASE("Phi hat at zero is the arc mass") {
  const std::int64_t Q = 8;
  const PhiFunction phi(Q);
  double mass = 0.0;
  for (std::int64_t q = Q; q <= 5 * Q; ++q) {
    int units = 0;
    for (std::int64_t a = 1; a < q; ++a) units += std::gcd(a, q) == 1;
    mass += units / static_cast<double>(q * q);
  }
  mass *= bump::transform(0.0).real();
  CHECK(phi.hat0() == doctest::Approx(mass).epsilon(1e-12));
  CHECK(std::abs(phi.hat(0) - phi.hat0()) < 1e-18);
}

TEST_CASE("Phi hat matches dense quadrature of the arc sum") {
  const std::int64_t Q = 8;
  const PhiFunction phi(Q);
  std::vector<long> ks;
  for (long k = -64; k <= 64; ++k) ks.push_back(k);
  const auto ref = oracle::dense_phi_transform(Q, ks, [&](double t) { return phi.eval(t); }, 400);
  double scale = phi.hat0();
  for (std::size_t j = 0; j < ks.size(); ++j) {
    CAPTURE(ks[j]);
    CHECK(std::abs(phi.hat(ks[j]) - ref[j]) < 1e-6 * scale);
  }
}

TEST_CASE("Phi is real: conjugate symmetric coefficients") {
  const PhiFunction phi(5);
  for (std::int64_t k : {1, 7, 30, 131, 4999, 123457}) {
    CHECK(std::abs(phi.hat(-k) - std::conj(phi.hat(k))) < 1e-20);
  }
}

TEST_CASE("kernel decomposition coefficient rules") {
  const auto kd = decompose_kernel(3, 3, 9.0);
  CHECK_FALSE(kd.warning.has_value());
  for (std::int64_t n = -3; n <= 3; ++n) {
    CHECK(kd.K2_hat(n, n * n * n) == cplx(0.0, 0.0));
    CHECK(std::abs(kd.K1_hat(n, n * n * n) - 1.0) < 1e-15);
    for (std::int64_t k : {-5, 1, 2, 17}) {
      const auto h = kd.phi.hat(k) / kd.phi.hat0();
      CHECK(std::abs(kd.K1_hat(n, n * n * n + k) - h) < 1e-18);
      CHECK(std::abs(kd.K1_hat(n, n * n * n + k) + kd.K2_hat(n, n * n * n + k)) < 1e-18);
    }
  }
  CHECK(kd.K1_hat(4, 64) == cplx(0.0, 0.0));
  CHECK(kd.K2_hat(4, 64) == cplx(0.0, 0.0));
}

TEST_CASE("kernel decomposition regime and flooring") {
  const auto kd = decompose_kernel(3, 3, 9.9);
  CHECK(kd.Q == 9);
  CHECK(decompose_kernel(3, 3, 4.0).warning.has_value());
  CHECK(decompose_kernel(3, 3, 28.0).warning.has_value());
  CHECK_FALSE(decompose_kernel(3, 3, 27.0).warning.has_value());
  CHECK_THROWS(decompose_kernel(3, 3, 0.5));
}

TEST_CASE("K1 synthesised from its coefficients reproduces the pointwise kernel") {
  // Phi from its Fourier coefficients on a grid fine enough that the
  // coefficient tail beyond the Nyquist index is negligible.
  const std::int64_t N = 2;
  const auto kd = decompose_kernel(N, 3, 4.0);
  const std::size_t M = std::size_t{1} << 23;
  std::vector<oracle::cplx> c(M);
  for (std::size_t k = 0; k <= M / 2; ++k) {
    const cplx h = kd.phi.hat(static_cast<std::int64_t>(k));
    c[k] = h;
    if (k > 0 && k < M / 2) c[M - k] = std::conj(h);
  }
  oracle::radix2_fft(c, +1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double peak = 0.0;
  for (std::size_t j = 0; j < M; j += 97) peak = std::max(peak, kd.phi.eval(static_cast<double>(j) / M));
  REQUIRE(peak > 0.0);
  int on_arc = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t j = rng() % M;
    const double t = static_cast<double>(j) / M;
    const double direct = kd.phi.eval(t);
    on_arc += direct > 0.0;
    CHECK(std::abs(c[j].real() - direct) < 1e-8 * peak);
    const double x = u(rng);
    const cplx k1 = kd.K_N(x, t) * c[j].real() / kd.phi.hat0();
    CHECK(std::abs(kd.K1(x, t) - k1) < 1e-8 * (2 * N + 1) * peak / kd.phi.hat0());
    CHECK(std::abs(kd.K1(x, t) + (kd.K_N(x, t) - kd.K1(x, t)) - kd.K_N(x, t)) < 1e-12);
  }
  CHECK(on_arc > 0);
}

TEST_CASE("major arcs are disjoint") {
  for (std::int64_t Q = 2; Q <= 64; ++Q) {
    const auto arcs = major_arcs(Q);
    CAPTURE(Q);
    CHECK(arcs_disjoint(arcs));
  }
  auto arcs = major_arcs(4);
  std::size_t expected = 0;
  for (std::int64_t q = 4; q <= 20; ++q)
    for (std::int64_t a = 1; a < q; ++a) expected += std::gcd(a, q) == 1;
  CHECK(arcs.size() == expected);
  // an overlap is detected
  std::swap(arcs[0].right_num, arcs[1].right_num);
  std::swap(arcs[0].right_den, arcs[1].right_den);
  CHECK_FALSE(arcs_disjoint(arcs));
}

TEST_CASE("arc CSV lists reduced endpoints") {
  const auto path = std::filesystem::temp_directory_path() / "dlab_arcs_test.csv";
  write_arcs_csv(major_arcs(2), path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "q,a,left,right");
  std::getline(in, line);
  CHECK(line == "10,1,2001/20000,1001/10000");
  std::filesystem::remove(path);
}

TEST_CASE("minor arc scan points are minor-arc approximations") {
  const auto rows = minor_arc_scan({8, 12}, 3, 0.0, 5, 7);
  REQUIRE(rows.size() == 10);
  for (const auto& r : rows) {
    CHECK(r.Q >= r.N * r.N);
    CHECK(r.Q <= r.N * r.N * r.N);
    CHECK(r.quantity <= r.N);
    CHECK(r.ratio == doctest::Approx(r.quantity / r.bound));
  }
}

TEST_CASE("scan set composition") {
  const auto ks = phi_hat_scan_set(16, 100, 20, 20, 1);
  CHECK(std::is_sorted(ks.begin(), ks.end()));
  CHECK(std::adjacent_find(ks.begin(), ks.end()) == ks.end());
  CHECK(ks.front() == 1);
  CHECK(ks.back() <= 200 * 16 * 16);
  CHECK(ks.size() >= 100 + 20);
}
