#pragma once

#include <string>
#include <variant>
#include <vector>

#include "dlab/kdv/flow.hpp"

namespace dlab {

/// Trajectory known only at uniform times t_k = k h, k = 0..K.
struct SampledTrajectory {
  double step = 0.0;
  std::vector<FourierSeries> frames;

  double horizon() const { return step * static_cast<double>(frames.size() - 1); }
  /// Frame at t, linear in time between samples of the interaction picture
  /// (modes rotated by e^{i n^5 t} before interpolating).
  FourierSeries at(double t) const;
};

using Trajectory = std::variant<HarmonicTrajectory, SampledTrajectory>;

FourierSeries slice(const Trajectory& u, double t);

struct PicardState {
  int j = 0;
  Trajectory trajectory;
  double diff_norm = 0.0;      ///< sup over sample times of ||u_j - u_{j-1}||_{H^s}
  double discarded_l2 = 0.0;   ///< sup over sample times of the l2 mass cut by the band cap
  double pruned_bound = 0.0;   ///< sum of |c| delta^j over dropped negligible terms
  std::size_t terms = 0;       ///< harmonic terms (0 when sampled)
};

struct PicardOptions {
  double delta = 1e-3;
  int max_iter = 8;
  int band_cap = 64;
  double s = 1.0;
  /// Above this many harmonic terms the iteration switches to time samples.
  std::size_t term_cap = 20000;
  /// Estimated term multiplications for one exact step; above this the step is sampled.
  double work_cap = 2e8;
  /// Terms with |c| delta^j below this are dropped (reported in pruned_bound).
  double prune_tol = 1e-24;
  /// Time samples for the diff norm diagnostics.
  int diag_samples = 33;
  /// Intervals of the sampled fallback (even; Simpson quadrature).
  int sampled_steps = 2048;
  /// Iteration stops early once diff_norm falls below this.
  double stop_tol = 0.0;
};

struct PicardResult {
  std::vector<PicardState> states;
  bool contraction = false;  ///< diff ratios <= 1/2 for 4 consecutive iterates
  bool sampled = false;
  double sampled_step = 0.0;
  std::string report;
};

/// u_0 = linear flow; u_{j+1} = linear flow + duhamel(nonlinear_term(u_j)).
PicardResult picard_solve(const FourierSeries& phi, const NonlinearitySpec& spec,
                          const PicardOptions& opt = {});

/// Diff ratios diff_{j+1} / diff_j with diff_0 skipped.
std::vector<double> contraction_ratios(const PicardResult& r);

}  // namespace dlab
