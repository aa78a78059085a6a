#include "dlab/spectral/harmonic_trajectory.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

struct KeyHash {
  std::size_t operator()(const HarmonicTrajectory::Key& k) const noexcept {
    const auto [n, j, lambda] = k;
    std::uint64_t h = std::bit_cast<std::uint64_t>(lambda);
    h ^= (static_cast<std::uint64_t>(static_cast<std::uint32_t>(n)) << 32 | static_cast<std::uint32_t>(j)) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

double time_scale(Torus t) { return t == Torus::TwoPi ? 1.0 : kTwoPi; }

// Replace each mirrored coefficient by the conjugate of its partner. Only
// called when the inputs were exactly symmetric, so this removes summation
// order noise and nothing else.
void enforce_symmetry(std::map<HarmonicTrajectory::Key, cplx>& terms) {
  // Rebuilt from the canonical half so a partner that cancelled to zero drops its mirror too.
  std::map<HarmonicTrajectory::Key, cplx> out;
  for (const auto& [key, c] : terms) {
    const auto [n, j, lambda] = key;
    if (n == 0 && lambda == 0) {
      if (c.real() != 0.0) out.emplace(key, cplx(c.real(), 0.0));
    } else if (n > 0 || (n == 0 && lambda > 0)) {
      out.emplace(key, c);
      out.emplace(HarmonicTrajectory::Key{-n, j, lambda == 0.0 ? 0.0 : -lambda}, std::conj(c));
    }
  }
  terms = std::move(out);
}

}  // namespace

HarmonicTrajectory HarmonicTrajectory::from_series(const FourierSeries& f) {
  HarmonicTrajectory u(f.torus());
  for (int n = -f.band(); n <= f.band(); ++n) u.add(n, 0, 0.0, f[n]);
  return u;
}

int HarmonicTrajectory::band() const {
  int b = 0;
  for (const auto& [key, c] : terms_) b = std::max(b, std::abs(std::get<0>(key)));
  return b;
}

int HarmonicTrajectory::max_power() const {
  int p = 0;
  for (const auto& [key, c] : terms_) p = std::max(p, std::get<1>(key));
  return p;
}

void HarmonicTrajectory::add(int n, int j, double lambda, cplx c) {
  if (j < 0) throw DomainError("HarmonicTrajectory: negative time power");
  if (c == cplx{}) return;
  if (lambda == 0.0) lambda = 0.0;  // fold -0 into +0
  auto [it, inserted] = terms_.try_emplace(Key{n, j, lambda}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

std::vector<HarmonicTerm> HarmonicTrajectory::terms() const {
  std::vector<HarmonicTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_)
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  return out;
}

cplx HarmonicTrajectory::coefficient(int n, int j, double lambda) const {
  const auto it = terms_.find({n, j, lambda});
  return it == terms_.end() ? cplx{} : it->second;
}

std::vector<HarmonicTerm> HarmonicTrajectory::mode_terms(int n) const {
  std::vector<HarmonicTerm> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (auto it = terms_.lower_bound({n, 0, -inf}); it != terms_.end() && std::get<0>(it->first) == n;
       ++it)
    out.push_back({n, std::get<1>(it->first), std::get<2>(it->first), it->second});
  return out;
}

FourierSeries HarmonicTrajectory::at(double t) const {
  FourierSeries f(torus_, band());
  const double w = time_scale(torus_);
  for (const auto& [key, c] : terms_) {
    const auto [n, j, lambda] = key;
    const double ph = w * lambda * t;
    f.at(n) += c * std::pow(t, j) * cplx(std::cos(ph), std::sin(ph));
  }
  return f;
}

cplx HarmonicTrajectory::evaluate(double x, double t) const { return dlab::evaluate(at(t), x); }

HarmonicTrajectory HarmonicTrajectory::truncated(int band, HarmonicTrajectory* rest) const {
  HarmonicTrajectory keep(torus_);
  if (rest) *rest = HarmonicTrajectory(torus_);
  for (const auto& [key, c] : terms_) {
    if (std::abs(std::get<0>(key)) <= band)
      keep.terms_.emplace(key, c);
    else if (rest)
      rest->terms_.emplace(key, c);
  }
  return keep;
}

HarmonicTrajectory HarmonicTrajectory::zero_mode() const { return truncated(0); }

HarmonicTrajectory HarmonicTrajectory::relabel(Torus target) const {
  HarmonicTrajectory r = *this;
  r.torus_ = target;
  return r;
}

HarmonicTrajectory& HarmonicTrajectory::operator+=(const HarmonicTrajectory& o) {
  require_same_torus(torus_, o.torus_, "HarmonicTrajectory +");
  for (const auto& [key, c] : o.terms_) add(std::get<0>(key), std::get<1>(key), std::get<2>(key), c);
  return *this;
}

HarmonicTrajectory& HarmonicTrajectory::operator-=(const HarmonicTrajectory& o) {
  require_same_torus(torus_, o.torus_, "HarmonicTrajectory -");
  for (const auto& [key, c] : o.terms_)
    add(std::get<0>(key), std::get<1>(key), std::get<2>(key), -c);
  return *this;
}

HarmonicTrajectory& HarmonicTrajectory::operator*=(cplx s) {
  if (s == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= s;
  return *this;
}

HarmonicTrajectory product(const HarmonicTrajectory& a, const HarmonicTrajectory& b,
                           int band_cap) {
  require_same_torus(a.torus(), b.torus(), "product");
  if (a.band() + b.band() > band_cap)
    throw BandOverflow("product: band " + std::to_string(a.band() + b.band()) + " exceeds cap " +
                       std::to_string(band_cap));
  const auto ta = a.terms(), tb = b.terms();
  // Accumulate in a hash table; per key the summation order is still the loop order.
  std::unordered_map<HarmonicTrajectory::Key, cplx, KeyHash> acc;
  acc.reserve(std::min<std::size_t>(ta.size() * tb.size(), std::size_t{1} << 22));
  for (const auto& x : ta)
    for (const auto& y : tb) {
      const double lambda = x.lambda + y.lambda;
      acc[{x.n + y.n, x.j + y.j, lambda == 0.0 ? 0.0 : lambda}] += x.c * y.c;
    }
  HarmonicTrajectory r(a.torus());
  for (const auto& [key, c] : acc) r.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), c);
  if (conjugate_symmetric(a, 0.0) && conjugate_symmetric(b, 0.0)) return symmetrized(r);
  return r;
}

HarmonicTrajectory symmetrized(const HarmonicTrajectory& u) {
  std::map<HarmonicTrajectory::Key, cplx> m;
  for (const auto& t : u.terms()) m.emplace(HarmonicTrajectory::Key{t.n, t.j, t.lambda}, t.c);
  enforce_symmetry(m);
  HarmonicTrajectory s(u.torus());
  for (const auto& [key, c] : m) s.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), c);
  return s;
}

HarmonicTrajectory spatial_derivative(const HarmonicTrajectory& u) {
  const double w = time_scale(u.torus());
  HarmonicTrajectory r(u.torus());
  for (const auto& t : u.terms()) r.add(t.n, t.j, t.lambda, t.c * cplx(0.0, w * t.n));
  return r;
}

HarmonicTrajectory time_derivative(const HarmonicTrajectory& u) {
  const double w = time_scale(u.torus());
  HarmonicTrajectory r(u.torus());
  for (const auto& t : u.terms()) {
    if (t.j > 0) r.add(t.n, t.j - 1, t.lambda, t.c * static_cast<double>(t.j));
    r.add(t.n, t.j, t.lambda, t.c * cplx(0.0, w * t.lambda));
  }
  return r;
}

HarmonicTrajectory fifth_derivative(const HarmonicTrajectory& u) {
  if (u.torus() != Torus::TwoPi)
    throw ConventionMismatch("fifth_derivative: defined on the TwoPi torus");
  HarmonicTrajectory r(u.torus());
  for (const auto& t : u.terms()) {
    const double n5 = static_cast<double>(ipow(t.n, 5));
    r.add(t.n, t.j, t.lambda, t.c * cplx(0.0, n5));
  }
  return r;
}

bool conjugate_symmetric(const HarmonicTrajectory& u, double tol) {
  const auto terms = u.terms();
  for (const auto& t : terms) {
    const cplx partner = u.coefficient(-t.n, t.j, -t.lambda);
    if (std::abs(partner - std::conj(t.c)) > tol) return false;
  }
  return true;
}

nlohmann::json to_json(const HarmonicTrajectory& u) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : u.terms())
    terms.push_back(
        {{"n", t.n}, {"j", t.j}, {"lambda", t.lambda}, {"re", t.c.real()}, {"im", t.c.imag()}});
  return {{"convention", std::string(to_string(u.torus()))}, {"terms", std::move(terms)}};
}

HarmonicTrajectory harmonic_trajectory_from_json(const nlohmann::json& j) {
  try {
    HarmonicTrajectory u(parse_torus(j.at("convention").get<std::string>()));
    for (const auto& t : j.at("terms"))
      u.add(t.at("n").get<int>(), t.at("j").get<int>(), t.at("lambda").get<double>(),
            cplx(t.at("re").get<double>(), t.at("im").get<double>()));
    return u;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed HarmonicTrajectory JSON: ") + e.what());
  }
}

}  // namespace dlab
