#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "oracles/oracles.hpp"

namespace oracle {

std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double a = sign * 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / n;
      acc += x[j] * cplx(std::cos(a), std::sin(a));
    }
    out[k] = acc;
  }
  return out;
}

void radix2_fft(std::vector<cplx>& x, int sign) {
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("radix2_fft: size");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  std::vector<cplx> tw(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(a), std::sin(a)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len)
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = x[i + k], v = x[i + k + len / 2] * tw[k * stride];
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
      }
  }
}

double window_profile(double tau) {
  const double x = 2.0 - std::abs(tau);
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x), b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

DenseNorms dense_bourgain(const std::vector<Term>& terms, double s, double b, double delta,
                          int log2_samples, double samples_per_unit) {
  std::map<int, std::vector<Term>> modes;
  for (const auto& t : terms) modes[t.n].push_back(t);
  const std::size_t K = std::size_t{1} << log2_samples;
  const double dt = delta / samples_per_unit;
  const double T = dt * static_cast<double>(K);
  DenseNorms out;
  for (const auto& [n, ts] : modes) {
    const double n5 = std::pow(static_cast<double>(n), 5);
    std::vector<cplx> g(K);
    // Time t_k = k dt for k in [-K/2, K/2), stored with wrap-around.
    for (std::size_t idx = 0; idx < K; ++idx) {
      const long k = idx < K / 2 ? static_cast<long>(idx) : static_cast<long>(idx) - static_cast<long>(K);
      const double t = k * dt;
      const double w = window_profile(t / delta);
      if (w == 0.0) continue;
      cplx v{};
      for (const auto& term : ts) {
        const double ph = (term.lambda + n5) * t;
        v += term.c * std::pow(t, term.j) * cplx(std::cos(ph), std::sin(ph));
      }
      g[idx] = w * v;
    }
    radix2_fft(g, -1);
    double sq = 0.0, l1 = 0.0;
    const double dxi = 2.0 * std::numbers::pi / T;
    for (std::size_t m = 0; m < K; ++m) {
      const long mm = m < K / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(K);
      const double xi = mm * dxi;
      const cplx U = g[m] * dt / (2.0 * std::numbers::pi);
      sq += std::pow(1.0 + std::abs(xi), 2.0 * b) * std::norm(U) * dxi;
      l1 += std::abs(U) * dxi;
    }
    const double ws = std::pow(1.0 + std::abs(n), 2.0 * s);
    out.xsb_sq += ws * sq;
    out.l1_sq += ws * l1 * l1;
  }
  return out;
}

}  // namespace oracle
