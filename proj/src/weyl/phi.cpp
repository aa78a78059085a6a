#include "dlab/weyl/phi.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dlab/errors.hpp"
#include "dlab/lattice/arithmetic.hpp"

namespace dlab {

namespace bump {

double rho(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return std::exp(-1.0 / (u * (1.0 - u)));
}

double phi(double s) { return rho(200.0 * (s - kLeft)); }

namespace {

constexpr double kStep = 0.01;
constexpr double kEtaMax = 100.0;  // |R| is below 1e-16 R(0) past this
constexpr int kHalfStencil = 4;  // 8-point Lagrange interpolation

std::vector<double> build_table() {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const auto n = static_cast<std::size_t>(std::lround(kEtaMax / kStep)) + 1;
  std::vector<double> table(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double eta = kStep * static_cast<double>(i);
    auto f = [eta](double v) { return rho(v + 0.5) * std::cos(kTwoPi * eta * v); };
    // Split at the oscillation scale so each panel sees a few periods.
    const int panels = 1 + static_cast<int>(eta);
    double sum = 0.0, err_total = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = 0.5 * p / panels, b = 0.5 * (p + 1) / panels;
      double err = 0.0;
      sum += GK::integrate(f, a, b, 6, 1e-10, &err);
      err_total += err;
    }
    table[i] = 2.0 * sum;
    if (i == 0) scale = table[0];
    if (2.0 * err_total > 1e-11 * scale)
      throw DomainError("bump transform quadrature failed at eta = " + std::to_string(eta));
  }
  return table;
}

const std::vector<double>& table() {
  static const std::vector<double> t = build_table();
  return t;
}

}  // namespace

double rho_transform_centered(double eta) {
  eta = std::abs(eta);
  if (eta > kEtaMax) return 0.0;
  const auto& tab = table();
  const int n = static_cast<int>(tab.size());
  const double x = eta / kStep;
  int i0 = static_cast<int>(std::floor(x)) - kHalfStencil + 1;
  if (i0 + 2 * kHalfStencil - 1 > n - 1) i0 = n - 2 * kHalfStencil;
  // Negative nodes read the even extension.
  auto at = [&](int i) { return tab[static_cast<std::size_t>(std::abs(i))]; };
  // Uniform-node Lagrange weights: 1 / prod_{m != j} (j - m).
  static const auto inv = [] {
    std::array<double, 2 * kHalfStencil> w{};
    for (int j = 0; j < 2 * kHalfStencil; ++j) {
      double p = 1.0;
      for (int m = 0; m < 2 * kHalfStencil; ++m)
        if (m != j) p *= static_cast<double>(j - m);
      w[static_cast<std::size_t>(j)] = 1.0 / p;
    }
    return w;
  }();
  std::array<double, 2 * kHalfStencil> diff{};
  for (int j = 0; j < 2 * kHalfStencil; ++j) {
    diff[static_cast<std::size_t>(j)] = x - (i0 + j);
    if (diff[static_cast<std::size_t>(j)] == 0.0) return at(i0 + j);
  }
  double r = 0.0;
  for (int j = 0; j < 2 * kHalfStencil; ++j) {
    double p = inv[static_cast<std::size_t>(j)];
    for (int m = 0; m < 2 * kHalfStencil; ++m)
      if (m != j) p *= diff[static_cast<std::size_t>(m)];
    r += p * at(i0 + j);
  }
  return r;
}

cplx transform(double xi) {
  // phi(s) = rho(200 s - 1): centre of the support at 3/400.
  return unit_phase(-xi * 3.0 / 400.0) * (rho_transform_centered(xi / 200.0) / 200.0);
}

}  // namespace bump

namespace {

// c_q(k) = mu(q/g) phi(q) / phi(q/g) with g = gcd(q, k).
std::int64_t holder(std::int64_t q, std::int64_t k, const ArithmeticSieve& s) {
  const std::int64_t g = std::gcd(q, k < 0 ? -k : k);  // gcd(q, 0) = q
  const std::int64_t m = q / g;
  const int mu = s.mobius(m);
  if (mu == 0) return 0;
  return mu * (s.totient(q) / s.totient(m));
}

constexpr std::int64_t kCacheEntries = 4'000'000;

}  // namespace

PhiFunction::PhiFunction(std::int64_t Q) : Q_(Q), hat0_(0.0) {
  if (Q < 2) throw ConfigError("Phi needs Q >= 2");
  const auto& s = ArithmeticSieve::shared();
  std::int64_t total = 0;
  for (std::int64_t q = Q; q <= 5 * Q; ++q) total += q;
  if (total <= kCacheEntries) {
    for (std::int64_t q = Q; q <= 5 * Q; ++q) {
      std::vector<std::int32_t> row(static_cast<std::size_t>(q));
      for (std::int64_t r = 0; r < q; ++r) row[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(holder(q, r, s));
      cq_.push_back(std::move(row));
    }
  }
  hat0_ = hat(0).real();
}

cplx PhiFunction::hat(std::int64_t k) const {
  const auto& s = ArithmeticSieve::shared();
  CompensatedSum acc;
  for (std::int64_t q = Q_; q <= 5 * Q_; ++q) {
    std::int64_t c;
    if (!cq_.empty()) {
      const std::int64_t r = ((k % q) + q) % q;
      c = cq_[static_cast<std::size_t>(q - Q_)][static_cast<std::size_t>(r)];
    } else {
      c = holder(q, k, s);
    }
    if (c == 0) continue;
    const double q2 = static_cast<double>(q) * static_cast<double>(q);
    const double eta = static_cast<double>(k) / (200.0 * q2);
    const double R = bump::rho_transform_centered(eta);
    if (R == 0.0) continue;
    // Phase -2 pi k (3/400) / q^2 reduced exactly mod 1.
    const std::int64_t den = 400 * q * q;
    const std::int64_t num = ((3 * (k % den)) % den + den) % den;
    const double ph = -static_cast<double>(num) / static_cast<double>(den);
    acc.add(unit_phase(ph) * (static_cast<double>(c) * R / (200.0 * q2)));
  }
  return acc.value();
}

double PhiFunction::eval(double t) const {
  t -= std::floor(t);
  double sum = 0.0;
  for (std::int64_t q = Q_; q <= 5 * Q_; ++q) {
    const double qd = static_cast<double>(q);
    const double a = std::floor(t * qd);
    const double s = std::fma(t, qd, -a);  // t q - a, in [0, 1)
    const double u = s * qd;               // (t - a/q) q^2
    if (u < bump::kLeft || u > bump::kRight) continue;
    if (std::gcd(static_cast<std::int64_t>(a), q) != 1) continue;
    sum += bump::phi(u);
  }
  return sum;
}

PhiFunction build_phi(std::int64_t Q) { return PhiFunction(Q); }

}  // namespace dlab
