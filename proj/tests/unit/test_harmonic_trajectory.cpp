#include <doctest.h>

#include <cmath>
#include <random>

#include "dlab/errors.hpp"
#include "dlab/spectral/harmonic_trajectory.hpp"

using namespace dlab;

namespace {

HarmonicTrajectory random_real_trajectory(std::mt19937_64& rng, int terms) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> mode(-6, 6), pw(0, 2), lam(-40, 40);
  HarmonicTrajectory u;
  for (int i = 0; i < terms; ++i) {
    const int n = mode(rng), j = pw(rng);
    const double l = lam(rng);
    const cplx c(g(rng), g(rng));
    u.add(n, j, l, c);
    u.add(-n, j, -l, std::conj(c));
  }
  return u;
}

}  // namespace

TEST_CASE("terms sharing (n, j, lambda) are merged and cancellations removed") {
  HarmonicTrajectory u;
  u.add(2, 1, 3.0, {1.0, 2.0});
  u.add(2, 1, 3.0, {0.5, 0.0});
  CHECK(u.size() == 1);
  CHECK(u.terms()[0].c == cplx(1.5, 2.0));
  u.add(2, 1, 3.0, {-1.5, -2.0});
  CHECK(u.empty());
  u.add(0, 0, -0.0, 1.0);
  u.add(0, 0, 0.0, 1.0);
  CHECK(u.size() == 1);
  CHECK_THROWS_AS(u.add(0, -1, 0.0, 1.0), DomainError);
}

TEST_CASE("time derivative agrees with a centred difference") {
  std::mt19937_64 rng(1);
  const auto u = random_real_trajectory(rng, 10);
  const auto du = time_derivative(u);
  const double t = 0.37, h = 1e-5;
  const auto fd = (u.at(t + h) - u.at(t - h)) * cplx(1.0 / (2 * h));
  const auto ex = du.at(t);
  for (int n = -6; n <= 6; ++n) CHECK(std::abs(fd[n] - ex[n]) <= 1e-5 * (1 + std::abs(ex[n])));
}

TEST_CASE("slice evaluation uses the convention's time basis") {
  HarmonicTrajectory u(Torus::Unit);
  u.add(1, 0, 0.25, 1.0);
  const auto f = u.at(1.0);
  CHECK(std::abs(f[1] - cplx(0.0, 1.0)) < 1e-15);
  HarmonicTrajectory v;
  v.add(1, 2, kPi, 1.0);
  CHECK(std::abs(v.at(1.0)[1] - cplx(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(v.evaluate(kPi / 2, 1.0) - cplx(0.0, -1.0)) < 1e-14);
}

TEST_CASE("products of real trajectories are exactly conjugate-symmetric") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_real_trajectory(rng, 6), b = random_real_trajectory(rng, 4);
    REQUIRE(conjugate_symmetric(a, 0.0));
    REQUIRE(conjugate_symmetric(product(a, b), 0.0));
    REQUIRE(conjugate_symmetric(spatial_derivative(a), 0.0));
    REQUIRE(conjugate_symmetric(time_derivative(a), 0.0));
    REQUIRE(conjugate_symmetric(fifth_derivative(a), 0.0));
  }
}

TEST_CASE("trajectory product agrees with slice products") {
  std::mt19937_64 rng(4);
  const auto a = random_real_trajectory(rng, 5), b = random_real_trajectory(rng, 5);
  const double t = 0.81;
  const auto p = product(a, b).at(t);
  const auto q = product(a.at(t), b.at(t));
  for (int n = -12; n <= 12; ++n) CHECK(std::abs(p[n] - q[n]) < 1e-9 * (1 + std::abs(q[n])));
}

TEST_CASE("truncation splits the terms by mode") {
  std::mt19937_64 rng(2);
  const auto u = random_real_trajectory(rng, 12);
  HarmonicTrajectory rest;
  const auto low = u.truncated(3, &rest);
  CHECK(low.band() <= 3);
  CHECK(low.size() + rest.size() == u.size());
  CHECK((low + rest).terms().size() == u.size());
}

TEST_CASE("fifth derivative requires the TwoPi torus") {
  HarmonicTrajectory u(Torus::Unit);
  u.add(1, 0, 0.0, 1.0);
  CHECK_THROWS_AS(fifth_derivative(u), ConventionMismatch);
  HarmonicTrajectory v;
  v.add(2, 0, 0.0, 1.0);
  CHECK(fifth_derivative(v).terms()[0].c == cplx(0.0, 32.0));
}

TEST_CASE("trajectory JSON round trip is exact") {
  std::mt19937_64 rng(8);
  const auto u = random_real_trajectory(rng, 9);
  const auto v = harmonic_trajectory_from_json(nlohmann::json::parse(to_json(u).dump()));
  const auto a = u.terms(), b = v.terms();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].j == b[i].j);
    CHECK(a[i].lambda == b[i].lambda);
    CHECK(a[i].c == b[i].c);
  }
}
