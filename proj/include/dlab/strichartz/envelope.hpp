#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlab/lattice/count_table.hpp"

namespace dlab {

enum class EnvelopeStrategy { AllOnes, Single, Random, Ascent };
std::string to_string(EnvelopeStrategy s);

struct EnvelopeOptions {
  std::vector<EnvelopeStrategy> strategies{EnvelopeStrategy::AllOnes, EnvelopeStrategy::Single,
                                           EnvelopeStrategy::Random, EnvelopeStrategy::Ascent};
  int random_draws = 16;
  int restarts = 8;
  int iterations = 200;
  double step = 0.5;
  std::uint64_t seed = 1;
  /// Random and ascent strategies evaluate the norm many times; they are
  /// skipped when one evaluation enumerates more multisets than this.
  double search_work_limit = 2e4;
  LatticeBudget budget{};
};

struct StrategyResult {
  EnvelopeStrategy strategy;
  /// even_norm / ||a||_2, a certified lower bound on K_{d,p,N}; empty when skipped.
  std::optional<double> value;
  std::string note;
};

struct EnvelopeReport {
  int d = 0, p = 0, N = 0;
  double envelope = 1.0;
  EnvelopeStrategy best = EnvelopeStrategy::Single;
  std::vector<StrategyResult> strategies;
  /// Shape of the known upper bound, N^{max(0, 1/2 - (d+1)/p) + eps} with unit constant.
  double theory_upper = 0.0;
};

/// Lower envelope for K_{d,p,N} (p = 2b even). The all-ones value is exact from
/// count_S; past the work budget it falls back to the permutation lower bound.
EnvelopeReport k_lower_envelope(int p, int N, int d, const EnvelopeOptions& opt = {},
                                double eps = 0.05);

/// (count / (2N+1)^b)^{1/p}, evaluated without overflow.
double all_ones_ratio(u128 count, int N, int b);

}  // namespace dlab
