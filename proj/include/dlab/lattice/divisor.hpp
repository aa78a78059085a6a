#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dlab/lattice/count_table.hpp"

namespace dlab {

using Triple = std::array<std::int64_t, 3>;

/// All ordered (n1, n2, n3) in [-N, N]^3 with n1+n2+n3 = A and n1^d+n2^d+n3^d = B,
/// found by joining a sorted pair table with the third variable. Requires odd d.
std::vector<Triple> enumerate_triples(int d, int N, std::int64_t A, std::int64_t B);

/// Pair table reused across many (A, B) queries.
class TripleFinder {
 public:
  TripleFinder(int d, int N);
  std::vector<Triple> find(std::int64_t A, std::int64_t B) const;
  int d() const { return d_; }
  int N() const { return N_; }

 private:
  struct Pair {
    std::int64_t A, B;
    std::int32_t n1, n2;
  };
  int d_, N_;
  std::vector<Pair> pairs_;
};

/// For each pair sum s of the triple: s != 0 requires s | (B - A^d), s == 0
/// requires B == A^d.
bool check_divisor_property(const Triple& t, int d, std::int64_t A, std::int64_t B);


struct DivisorScan {
  int d = 3;
  int N = 1;
  std::uint64_t solutions = 0;   ///< ordered triples checked, all of [-N, N]^3
  std::uint64_t violations = 0;  ///< triples failing check_divisor_property
  /// Largest number of ordered triples sharing one (A, B) with B != A^d.
  std::uint64_t max_count = 0;
  std::int64_t argmax_A = 0;
  std::int64_t argmax_B = 0;
};

/// Checks the divisor property on every triple and finds the largest fibre off the
/// degenerate locus B = A^d, where (k, -k, A) solutions make the count grow like N.
DivisorScan divisor_scan(int d, int N, const LatticeBudget& budget = {});

}  // namespace dlab
