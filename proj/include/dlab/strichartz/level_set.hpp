#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlab/strichartz/coefficients.hpp"

namespace dlab {

struct SamplerConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  double z = 1.96;  ///< Wilson interval quantile
};

struct LevelSetEntry {
  double lambda = 0.0;
  double estimate = 0.0;
  double ci_halfwidth = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

using LevelSetProfile = std::vector<LevelSetEntry>;

/// Centre and half-width of the Wilson score interval for hits / n.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t n, double z);

/// |F_N(x, t)| by direct O(N) summation.
double curve_sum_modulus(const CoefficientVector& a, int d, double x, double t);

/// Monte Carlo measure of {(x,t) in [0,1]^2 : |F_N| > lambda} for each lambda.
/// All lambdas share the same sample points, so the profile is monotone sample by sample.
LevelSetProfile level_set_profile(const CoefficientVector& a, int d, std::vector<double> lambdas,
                                  const SamplerConfig& cfg = {});
LevelSetEntry level_set_measure(const CoefficientVector& a, int d, double lambda,
                                const SamplerConfig& cfg = {});

/// Every pair lambda_i < lambda_j has estimate_i + ci_i >= estimate_j - ci_j.
bool monotone_up_to_ci(const LevelSetProfile& p);

struct LevelSetRow {
  LevelSetEntry entry;
  double ratio = 0.0;  ///< measure lambda^{2^d+2} / N^{exponent}
  bool resolved = false;
};

struct LevelSetReport {
  int d = 0, N = 0;
  double lambda_min = 0.0, lambda_max = 0.0;
  double n_exponent = 0.0, lambda_exponent = 0.0;
  std::vector<LevelSetRow> rows;
  /// max / min ratio over resolved rows; empty when fewer than two are resolved.
  std::optional<double> stability;
  double max_ratio = 0.0;
  std::optional<std::string> regime;
};

struct LevelSetScanConfig {
  double c = 1.0;       ///< lambda range starts at c N^{...}
  double eps = 0.05;
  int lambdas = 16;     ///< log-spaced grid points
  std::uint64_t min_hits = 25;  ///< rows with fewer hits are reported but not resolved
  SamplerConfig sampler{};
};

/// Curve case: ratios |E_lambda| lambda^{2^d+2} / N^{2^{d-1}-d+eps} over
/// lambda in [c N^{1/2-2^{-d}+eps}, 2 N^{1/2}].
LevelSetReport verify_cor1(const CoefficientVector& a, int d, const LevelSetScanConfig& cfg = {});
/// Kernel case: |G_lambda| lambda^{2^d+2} / N^{2^d-d+1} for the unnormalized
/// all-ones sum, lambda in [c N^{1-2^{1-d}+eps}, 2N].
LevelSetReport verify_kernel_levelset(int d, int N, const LevelSetScanConfig& cfg = {});

/// Smallest constants (C1, C2), minimizing C1 + C2, with
/// lambda^2 |E|^2 <= C1 X |E|^2 + C2 Y |E| on every (lambda, Q) pair, where
/// X = N^{1 - d 2^{1-d} + eps} Q^{2^{1-d}} and Y = N^eps / Q.
struct EstEFit {
  double C1 = 0.0, C2 = 0.0;
  std::size_t constraints = 0;
  bool satisfied = false;
};
EstEFit fit_level_set_constants(const LevelSetProfile& profile, int d, int N,
                                const std::vector<double>& Qs, double eps = 0.05);

}  // namespace dlab
