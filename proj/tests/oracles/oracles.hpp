#pragma once
// Test-only reference implementations. None of these call into the library's
// numerical kernels; they share only plain data types.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// O(n^2) DFT, X_k = sum_j x_j e^{sign 2 pi i jk/n}.
std::vector<cplx> naive_dft(const std::vector<cplx>& x, int sign);

/// Iterative radix-2 FFT with the same sign convention; size must be a power of two.
void radix2_fft(std::vector<cplx>& x, int sign);

struct Term {
  int n;
  int j;
  double lambda;
  cplx c;
};

/// Window psi(tau): 1 on [-1,1], 0 outside (-2,2), exp(-1/x) smooth step between.
double window_profile(double tau);

struct DenseNorms {
  double xsb_sq = 0.0;  // sum_n <n>^{2s} int <xi>^{2b} |U|^2
  double l1_sq = 0.0;   // sum_n <n>^{2s} (int |U|)^2
};

/// Samples psi_delta(t) u_n(t) e^{i n^5 t} on a fine grid, transforms with a
/// zero-padded FFT and sums the weighted spectrum on the resulting grid.
DenseNorms dense_bourgain(const std::vector<Term>& terms, double s, double b, double delta,
                          int log2_samples = 20, double samples_per_unit = 400.0 / 3.14159265358979);

}  // namespace oracle

namespace oracle {

/// Exhaustive count of 2b-tuples in [-N, N] with equal first and d-th power
/// sums, for every N in [0, Nmax] at once (entry N). Cost (2 Nmax + 1)^{2b}.
std::vector<std::uint64_t> brute_force_S(int d, int b, int Nmax);

/// Direct sum over a in [1, q], gcd(a, q) = 1, of e^{2 pi i a n / q}.
cplx direct_ramanujan(long q, long n);

}  // namespace oracle

namespace oracle {

/// int_0^1 Phi(t) e^{-2 pi i k t} dt by trapezoid sampling of `phi_eval` on each
/// arc [a/q + 1/(200 q^2), a/q + 1/(100 q^2)], Q <= q <= 5Q, for k in ks.
template <class PhiEval>
std::vector<cplx> dense_phi_transform(long Q, const std::vector<long>& ks, PhiEval&& phi_eval, int samples);

/// int rho(v + 1/2) cos(2 pi eta v) dv over |v| <= 1/2, trapezoid with m nodes.
double bump_transform_trapezoid(double eta, int m);

}  // namespace oracle

#include "oracles/phi_transform.inl"

namespace oracle {

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Plain Monte Carlo of int_{[0,1]^2} |sum_n a_n e(nx + n^d t)|^p, a indexed n + N.
McEstimate mc_curve_moment(const std::vector<cplx>& a, int d, double p, std::uint64_t samples,
                           std::uint64_t seed);

/// ||f||_4^4 for a 2-D trigonometric polynomial by exact grid summation.
double grid_l4_power(const std::vector<std::array<long, 2>>& modes, const std::vector<cplx>& coeff);

}  // namespace oracle

namespace oracle {

/// Galerkin integrating-factor RK4 for u_t + u_xxxxx + P1(u) u_x + P2(u) u_x^2 = 0
/// on modes |n| <= band of the 2 pi torus. With mean_removed, each u^k in P1 has
/// 2 pi times its mean subtracted. Returns the coefficients at time T.
std::vector<cplx> ifrk4_solve(const std::vector<cplx>& u0, const std::vector<double>& p1,
                              const std::vector<double>& p2, bool mean_removed, double T, int steps);

}  // namespace oracle
