#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dlab/util/numeric.hpp"
#include "dlab/weyl/phi.hpp"

namespace dlab {

/// K_N = K_{1,Q} + K_{2,Q} with K_{1,Q} = K_N Phi / Phi^(0).
struct KernelDecomposition {
  std::int64_t N = 0;
  int d = 3;
  std::int64_t Q = 0;
  /// Set when Q lies outside [N^{d-1}, N^d].
  std::optional<std::string> warning;
  PhiFunction phi;

  cplx K_N(double x, double t) const;
  cplx K1(double x, double t) const;
  /// Coefficient rules on the (n1, n2) lattice.
  cplx K1_hat(std::int64_t n1, std::int64_t n2) const;
  cplx K2_hat(std::int64_t n1, std::int64_t n2) const;
};

/// Q is floored to an integer.
KernelDecomposition decompose_kernel(std::int64_t N, int d, double Q);

struct Arc {
  std::int64_t a, q;  // centre fraction a/q
  // Endpoints a/q + 1/(200 q^2) and a/q + 1/(100 q^2) as exact fractions.
  std::int64_t left_num, left_den, right_num, right_den;
};

/// All arcs for Q <= q <= 5Q, a in [1, q) coprime to q, sorted by left endpoint.
std::vector<Arc> major_arcs(std::int64_t Q);
/// Exact pairwise disjointness of the sorted arcs (strict gaps).
bool arcs_disjoint(const std::vector<Arc>& arcs);
/// CSV: q,a,left,right with endpoints written as reduced "num/den".
void write_arcs_csv(const std::vector<Arc>& arcs, const std::filesystem::path& path);

/// Row of a verification scan: measured quantity against a reference bound.
struct ScanRow {
  std::int64_t N = 0;
  std::int64_t Q = 0;
  double quantity = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

void write_scan_csv(const std::vector<ScanRow>& rows, const std::filesystem::path& path);

/// |weyl_sum| at minor-arc points t = a/q + 1/(3q^2), q prime in [N^{d-1}, N^d];
/// bound N^{1 - d 2^{1-d} + eps} q^{2^{1-d}}. One row per (N, q), Q column = q.
std::vector<ScanRow> minor_arc_scan(const std::vector<std::int64_t>& Ns, int d, double eps,
                                    int primes_per_N, std::uint64_t seed);

/// Sampled sup over x and over t on random arcs of |K_{1,Q}(x, t)|, with Q = N^{d-1};
/// bound N^{1 - d 2^{1-d}} Q^{2^{1-d}}.
std::vector<ScanRow> k1_sup_scan(const std::vector<std::int64_t>& Ns, int d, int samples,
                                 std::uint64_t seed);

/// The k values scanned for max |Phi^(k)|: 1..k_dense; for `structured` random
/// q in [Q, 5Q] the values k = q, 2q, q(q+1); the `structured` 13-smooth numbers
/// below 200 Q^2 with the most divisors in [Q, 5Q]; and `random` uniform draws
/// from [1, 200 Q^2]. Sorted, without duplicates.
std::vector<std::int64_t> phi_hat_scan_set(std::int64_t Q, std::int64_t k_dense, int structured,
                                           int random, std::uint64_t seed);

/// max over the scan set of |Phi^(k)| Q with Q = N^{d-1}; bound column is 1.
std::vector<ScanRow> phi_hat_scan(const std::vector<std::int64_t>& Ns, int d, std::int64_t k_dense,
                                  int structured, int random, std::uint64_t seed);

}  // namespace dlab
