#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dlab/lattice/count_table.hpp"
#include "dlab/util/numeric.hpp"

namespace dlab {

/// Coefficients a_n, n in [-N, N], of F_N(x, t) = sum_n a_n e(nx + n^d t).
class CoefficientVector {
 public:
  /// Copies `values` (2N+1 entries, index n + N); normalizes to unit l2 norm when asked.
  CoefficientVector(int N, std::vector<cplx> values, bool normalize = true);

  static CoefficientVector ones(int N, bool normalize = true);
  static CoefficientVector single(int N, int n);
  /// Independent standard complex Gaussian entries, normalized.
  static CoefficientVector random(int N, std::mt19937_64& rng);

  int N() const { return N_; }
  cplx operator[](int n) const { return a_[static_cast<std::size_t>(n + N_)]; }
  std::span<const cplx> values() const { return a_; }
  double l2() const;
  double l1() const;
  /// a_n -> a_{-n}.
  CoefficientVector reversed() const;

 private:
  int N_;
  std::vector<cplx> a_;
};

/// ||F_N||_{L^{2b}(T^2)}^{2b} = sum_{(A,B)} |mu^{*b}(A,B)|^2, mu = sum_n a_n delta_{(n, n^d)}.
double even_norm_power(const CoefficientVector& a, int b, int d, const LatticeBudget& budget = {});
/// ||F_N||_{L^{2b}(T^2)}.
double even_norm(const CoefficientVector& a, int b, int d, const LatticeBudget& budget = {});

/// Wirtinger gradient g_m = dF / d conj(a_m) of F = even_norm_power, so that
/// F(a + h v) = F(a) + 2 h Re sum_m v_m conj(g_m) + O(h^2).
std::vector<cplx> even_norm_power_gradient(const CoefficientVector& a, int b, int d,
                                           const LatticeBudget& budget = {});

}  // namespace dlab
