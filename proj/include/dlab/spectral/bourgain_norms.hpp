#pragma once

#include "dlab/spectral/harmonic_trajectory.hpp"
#include "dlab/spectral/time_window.hpp"

namespace dlab {

struct QuadratureOptions {
  double rel_tol = 1e-8;  ///< relative tolerance for each adaptive panel
  int max_depth = 18;     ///< Gauss-Kronrod bisection depth
};

struct NormResult {
  double value = 0.0;
  double error = 0.0;  ///< propagated quadrature error estimate
};

/// X_{s,b} norm of psi_delta(t) u(x,t) on the 2 pi torus:
///   ( sum_n <n>^{2s} int <lambda + n^5>^{2b} |U(n, lambda)|^2 dlambda )^{1/2},
/// with U(n, lambda) = (1/2pi) int psi_delta(t) u_n(t) e^{-i lambda t} dt so that
/// u_n(t) psi_delta(t) = int U(n, lambda) e^{i lambda t} dlambda.
/// Rejects b <= -1/2.
NormResult xsb_norm(const HarmonicTrajectory& u, double s, double b, const TimeWindow& window,
                    const QuadratureOptions& opt = {});

/// Y_s = X_{s,1/2} + ( sum_n <n>^{2s} ( int |U(n, lambda)| dlambda )^2 )^{1/2}.
NormResult y_s_norm(const HarmonicTrajectory& u, double s, const TimeWindow& window,
                    const QuadratureOptions& opt = {});

}  // namespace dlab
