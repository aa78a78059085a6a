#pragma once

#include <cmath>
#include <numbers>
#include <numeric>

namespace oracle {

template <class PhiEval>
std::vector<cplx> dense_phi_transform(long Q, const std::vector<long>& ks, PhiEval&& phi_eval, int samples) {
  std::vector<cplx> out(ks.size());
  for (long q = Q; q <= 5 * Q; ++q) {
    const double q2 = static_cast<double>(q) * q;
    const double w = (1.0 / 100.0 - 1.0 / 200.0) / q2;
    for (long a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const double left = static_cast<double>(a) / q + 1.0 / (200.0 * q2);
      const double h = w / samples;
      for (int i = 1; i < samples; ++i) {
        const double t = left + h * i;
        const double v = phi_eval(t) * h;
        for (std::size_t j = 0; j < ks.size(); ++j) {
          const double ph = -2.0 * std::numbers::pi * std::fmod(static_cast<double>(ks[j]) * t, 1.0);
          out[j] += v * cplx(std::cos(ph), std::sin(ph));
        }
      }
    }
  }
  return out;
}

}  // namespace oracle
