#include "dlab/spectral/time_window.hpp"

#include <bit>
#include <cmath>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

double h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = h(x), b = h(1.0 - x);
  return a / (a + b);
}

// Frequencies beyond this margin past |omega| carry no double-precision mass,
// so the trapezoid alias at pi*M/2 is invisible.
constexpr double kAliasMargin = 2500.0;

std::size_t grid_size(double omega) {
  const double need = 2.0 * (std::abs(omega) + kAliasMargin) / kPi;
  std::size_t m = 2048;
  while (static_cast<double>(m) < need) m *= 2;
  return m;
}

}  // namespace

TimeWindow::TimeWindow(double delta) : delta_(delta), cache_(std::make_shared<Cache>()) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw ConfigError("time window length must be positive and finite");
}

double TimeWindow::profile(double tau) { return smooth_step(2.0 - std::abs(tau)); }

// Samples tau^j psi(tau) * h at tau_i = 4 i / m for i = 0 .. m/2.
const std::vector<double>& TimeWindow::grid_values(int j, std::size_t m) const {
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->values[{j, m}];
  if (!slot) {
    auto v = std::make_shared<std::vector<double>>(m / 2 + 1);
    const double step = 4.0 / static_cast<double>(m);
    for (std::size_t i = 0; i <= m / 2; ++i) {
      const double tau = step * static_cast<double>(i);
      (*v)[i] = std::pow(tau, j) * profile(tau) * step;
    }
    slot = std::move(v);
  }
  return *slot;
}

cplx TimeWindow::moment_transform(int j, double xi) const {
  if (j < 0) throw DomainError("moment_transform: negative power");
  const double omega = xi * delta_;
  const std::size_t m = grid_size(omega);
  const auto& f = grid_values(j, m);
  const double step = 4.0 / static_cast<double>(m);
  // tau^j psi(tau) has parity (-1)^j, so only half the grid is summed. The
  // phase advances by rotation and is re-seeded exactly every 64 nodes.
  const double a = omega * step;
  const cplx rot(std::cos(a), std::sin(a));
  double c_acc = 0.5 * f[0], s_acc = 0.0;
  cplx e(1.0, 0.0);
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (i % 64 == 0) {
      const double ph = a * static_cast<double>(i);
      e = {std::cos(ph), std::sin(ph)};
    } else {
      e *= rot;
    }
    c_acc += f[i] * e.real();
    s_acc += f[i] * e.imag();
  }
  const double acc = j % 2 == 0 ? 2.0 * c_acc : -2.0 * s_acc;
  const double scale = std::pow(delta_, j + 1) / kTwoPi;
  return j % 2 == 0 ? cplx(scale * acc, 0.0) : cplx(0.0, scale * acc);
}

}  // namespace dlab
