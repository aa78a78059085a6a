#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dlab/spectral/time_window.hpp"
#include "dlab/util/numeric.hpp"

namespace dlab {

struct Mode2 {
  std::int64_t m = 0, n = 0;
  cplx c{};
};

/// Finitely supported coefficient table of a function on T^2.
using Table2D = std::vector<Mode2>;

struct B4Result {
  double lhs = 0.0;  ///< exact L^4 norm
  double rhs = 0.0;  ///< weighted l2 norm with weights (1 + |n - m^d|)^{(d+1)/(2d)}
};

/// Exact ||f||_4 from the 2-fold self-convolution of the coefficients, and the
/// weighted right-hand side of the L^4 restriction inequality.
B4Result verify_b4est(const Table2D& f, int d);

/// Random table on m in [-band, band], n - m^d in [-band, band]: each mode kept
/// with a random density, complex Gaussian amplitudes.
Table2D random_band_table(int d, int band, std::mt19937_64& rng);

struct EmbeddingConfig {
  std::vector<int> Ns{4, 8, 16, 32, 64};
  int trials = 3;
  double delta = 1.0;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct EmbeddingRow {
  int N = 0;
  int trial = 0;
  double l4 = 0.0, l4_error = 0.0;
  double xsb = 0.0;
  double ratio = 0.0;
};

struct EmbeddingReport {
  std::vector<EmbeddingRow> rows;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};

/// Monte Carlo L^4 norm of psi_delta(t) u(x, t) for a free wave
/// u = sum_n a_n e^{i(nx - n^5 t)}, with measure dx dt / (2 pi)^2 so that the
/// L^2 norm coincides with X_{0,0}. Returns (estimate, standard error).
std::pair<double, double> windowed_l4_norm(const std::vector<cplx>& a, const TimeWindow& window,
                                           std::uint64_t samples, std::uint64_t seed,
                                           unsigned threads);

/// Ratios ||psi u||_4 / ||psi u||_{X_{0,3/10}} over random free waves of band N.
EmbeddingReport verify_embeddings(const EmbeddingConfig& cfg = {});

}  // namespace dlab
