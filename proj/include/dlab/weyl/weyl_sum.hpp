#pragma once

#include <cstdint>
#include <span>

#include "dlab/util/numeric.hpp"

namespace dlab {

/// sum_{n=1}^{N} e^{2 pi i (t n^d + P(n))} with P(n) = sum_j p[j] n^j (degree < d).
/// Phases are reduced mod 1 through exact two-products; summation is compensated.
cplx weyl_sum(std::int64_t N, int d, double t, std::span<const double> P = {});

/// K_N(x, t) = sum_{n=-N}^{N} e^{2 pi i (t n^d + x n)}.
cplx dirichlet_curve_kernel(std::int64_t N, int d, double x, double t);

}  // namespace dlab
