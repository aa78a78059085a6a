#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dlab/errors.hpp"
#include "dlab/spectral/bourgain_norms.hpp"
#include "oracles/oracles.hpp"

using namespace dlab;

namespace {

HarmonicTrajectory free_wave(int N, double amp, bool both = false) {
  const double n5 = std::pow(N, 5);
  HarmonicTrajectory u;
  u.add(N, 0, -n5, amp);
  if (both) u.add(-N, 0, n5, amp);
  return u;
}

std::vector<oracle::Term> as_oracle(const HarmonicTrajectory& u) {
  std::vector<oracle::Term> out;
  for (const auto& t : u.terms()) out.push_back({t.n, t.j, t.lambda, t.c});
  return out;
}

}  // namespace

TEST_CASE("window profile is one on [-1,1] and vanishes outside (-2,2)") {
  CHECK(TimeWindow::profile(0.0) == 1.0);
  CHECK(TimeWindow::profile(1.0) == 1.0);
  CHECK(TimeWindow::profile(-2.0) == 0.0);
  CHECK(TimeWindow::profile(2.5) == 0.0);
  CHECK(TimeWindow::profile(1.5) == doctest::Approx(0.5));
  const TimeWindow w(0.5);
  CHECK(w(0.6) == doctest::Approx(TimeWindow::profile(1.2)));
  CHECK_THROWS_AS(TimeWindow(0.0), ConfigError);
}

TEST_CASE("window moments integrate the window exactly at zero frequency") {
  // int psi = 3 by the symmetry S(x) + S(1 - x) = 1 of the smooth step.
  const TimeWindow w(1.0);
  CHECK(w.moment_transform(0, 0.0).real() == doctest::Approx(3.0 / kTwoPi).epsilon(1e-13));
  CHECK(std::abs(w.moment_transform(1, 0.0)) < 1e-15);
  const TimeWindow w2(2.0);
  CHECK(w2.moment_transform(0, 0.0).real() == doctest::Approx(6.0 / kTwoPi).epsilon(1e-13));
}

TEST_CASE("xsb of the zero trajectory is zero") {
  CHECK(xsb_norm(HarmonicTrajectory{}, 1.0, 0.5, TimeWindow(1.0)).value == 0.0);
  CHECK(y_s_norm(HarmonicTrajectory{}, 1.0, TimeWindow(1.0)).value == 0.0);
}

TEST_CASE("xsb rejects b <= -1/2 and the unit torus") {
  const auto u = free_wave(2, 1.0);
  CHECK_THROWS_AS(xsb_norm(u, 0.0, -0.5, TimeWindow(1.0)), DomainError);
  CHECK_THROWS_AS(xsb_norm(u.relabel(Torus::Unit), 0.0, 0.5, TimeWindow(1.0)), ConventionMismatch);
}

TEST_CASE("free wave xsb matches the dense FFT oracle") {
  for (int N : {1, 4, 16}) {
    const auto u = free_wave(N, 1.0);
    const double delta = 1.0;
    const auto ref = oracle::dense_bourgain(as_oracle(u), 0.0, 0.5, delta);
    const auto got = xsb_norm(u, 0.0, 0.5, TimeWindow(delta));
    CAPTURE(N);
    CHECK(std::abs(got.value - std::sqrt(ref.xsb_sq)) <= 1e-6 * got.value);
  }
}

TEST_CASE("mixed trajectory xsb and Y_s match the dense FFT oracle") {
  HarmonicTrajectory u;
  const double n5 = std::pow(3.0, 5);
  u.add(3, 0, -n5, {1.0, 0.5});
  u.add(-3, 0, n5, {1.0, -0.5});
  u.add(3, 1, -n5 + 7.0, {0.0, 0.3});
  u.add(-3, 1, n5 - 7.0, {0.0, -0.3});
  u.add(1, 0, 4.0, 0.7);
  u.add(-1, 0, -4.0, 0.7);
  const double delta = 0.7, s = 1.0, b = 0.3;
  const auto ref = oracle::dense_bourgain(as_oracle(u), s, b, delta);
  const auto x = xsb_norm(u, s, b, TimeWindow(delta));
  CHECK(std::abs(x.value - std::sqrt(ref.xsb_sq)) <= 1e-6 * x.value);
  const auto ref_half = oracle::dense_bourgain(as_oracle(u), s, 0.5, delta);
  const auto y = y_s_norm(u, s, TimeWindow(delta));
  const double y_ref = std::sqrt(ref_half.xsb_sq) + std::sqrt(ref_half.l1_sq);
  CHECK(std::abs(y.value - y_ref) <= 1e-6 * y.value);
}

TEST_CASE("norms are absolutely homogeneous") {
  const auto u = free_wave(5, 1.0, true);
  const TimeWindow w(1.0);
  const double base = xsb_norm(u, 1.0, 0.5, w).value;
  const double ybase = y_s_norm(u, 1.0, w).value;
  for (cplx alpha : {cplx(2.0, 0.0), cplx(0.0, -3.0), cplx(0.6, 0.8)}) {
    CHECK(xsb_norm(u * alpha, 1.0, 0.5, w).value == doctest::Approx(std::abs(alpha) * base).epsilon(1e-10));
    CHECK(y_s_norm(u * alpha, 1.0, w).value == doctest::Approx(std::abs(alpha) * ybase).epsilon(1e-10));
  }
}

TEST_CASE("Y_s dominates the X_{s,1/2} norm") {
  HarmonicTrajectory u = free_wave(2, 1.0, true);
  u.add(1, 1, 3.0, 0.5);
  u.add(-1, 1, -3.0, 0.5);
  const TimeWindow w(0.5);
  CHECK(y_s_norm(u, 0.5, w).value >= xsb_norm(u, 0.5, 0.5, w).value);
}

TEST_CASE("halving the quadrature tolerance moves the result less than the error bound") {
  HarmonicTrajectory u = free_wave(3, 1.0, true);
  u.add(3, 1, 50.0, 0.4);
  u.add(-3, 1, -50.0, 0.4);
  const TimeWindow w(1.0);
  for (double tol : {1e-6, 1e-8}) {
    const auto a = xsb_norm(u, 1.0, 0.5, w, {tol, 18});
    const auto b = xsb_norm(u, 1.0, 0.5, w, {tol / 2, 18});
    CAPTURE(tol);
    CHECK(std::abs(a.value - b.value) <= a.error + b.error);
  }
}

TEST_CASE("linear flow Y_s norm over H^s norm is stable in N") {
  const double s = 0.5;
  const TimeWindow w(1.0);
  std::vector<double> ratios;
  for (int N : {4, 8, 16, 32, 64}) {
    const double amp = std::pow(N, -s);
    const auto u = free_wave(N, amp, true);
    FourierSeries phi(Torus::TwoPi, N);
    phi.at(N) = amp;
    phi.at(-N) = amp;
    ratios.push_back(y_s_norm(u, s, w).value / h_s_norm(phi, s));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo < 1.0 + 1e-8);
}
