#pragma once

#include <vector>

#include "dlab/kdv/picard.hpp"

namespace dlab {

/// u(x, t) = v(x - theta(t), t) with theta(t) = int_0^t int_T v^k dx dtau
/// (length measure on [0, 2 pi)). Mode n of u is v_n(t) e^{-i n theta(t)}.
class GaugedTrajectory {
 public:
  GaugedTrajectory(Trajectory v, int k);

  int k() const { return k_; }
  const Trajectory& source() const { return v_; }
  double theta(double t) const;
  /// theta'(t) = int_T v^k(x, t) dx.
  double theta_rate(double t) const;
  FourierSeries at(double t) const;
  /// d_t u at time t: closed form for harmonic sources, centered differences otherwise.
  FourierSeries time_derivative_at(double t) const;
  /// Step of the centered differences (0 for harmonic sources).
  double difference_step() const { return fd_step_; }

 private:
  Trajectory v_;
  int k_;
  HarmonicTrajectory rate_, theta_;  // harmonic sources
  std::vector<double> theta_samples_;  // sampled sources
  double fd_step_ = 0.0;
};

GaugedTrajectory gauge_transform(const Trajectory& v, int k);

/// sup over `times` of || d_t u + d_x^5 u + P1(u) u_x + P2(u) u_x^2 ||_{L^2}.
double residual(const GaugedTrajectory& u, const NonlinearitySpec& spec,
                const std::vector<double>& times);

}  // namespace dlab
