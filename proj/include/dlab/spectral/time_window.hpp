#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "dlab/util/numeric.hpp"

namespace dlab {

/// Smooth time cutoff psi_delta(t) = psi(t / delta), where psi == 1 on [-1, 1],
/// psi == 0 outside (-2, 2), built from the C-infinity step exp(-1/x).
class TimeWindow {
 public:
  explicit TimeWindow(double delta);

  double delta() const { return delta_; }
  double operator()(double t) const { return profile(t / delta_); }

  /// psi(tau).
  static double profile(double tau);

  /// (1/2pi) * integral of t^j psi_delta(t) e^{-i xi t} dt.
  /// Evaluated by the trapezoid rule on the support, which converges faster
  /// than any power because the integrand is smooth and compactly supported.
  cplx moment_transform(int j, double xi) const;

 private:
  const std::vector<double>& grid_values(int j, std::size_t m) const;

  double delta_;
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<int, std::size_t>, std::shared_ptr<const std::vector<double>>> values;
  };
  std::shared_ptr<Cache> cache_;
};

}  // namespace dlab
