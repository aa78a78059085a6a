#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlab/util/numeric.hpp"

namespace dlab {

using u128 = unsigned __int128;
std::string to_decimal(u128 v);

/// Diophantine system n_1 + ... + n_b = m_1 + ... + m_b, n_1^d + ... = m_1^d + ...,
/// all variables in {-N, ..., N}.
struct SystemSpec {
  int d = 3;
  int b = 1;
  int N = 1;
  /// Throws ConfigError on d < 2, b outside [1, 20], N < 1, or b N^d overflowing 62 bits.
  void validate() const;
};

/// Resource limits shared by the counting routines.
struct LatticeBudget {
  std::size_t memory_bytes = std::size_t{1} << 30;
  /// Cap on enumerated sorted b-tuples (multisets) for orbit-based sums.
  std::uint64_t max_work = 600'000'000;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;
  unsigned resolved_threads() const;
};

template <class T>
struct SignatureEntry {
  std::int64_t A;
  std::int64_t B;
  T value;
};

/// Frozen table (A, B) -> value, sorted by (A, B) with no zero entries.
template <class T>
class SignatureTable {
 public:
  SignatureTable() = default;
  SignatureTable(SystemSpec spec, std::vector<SignatureEntry<T>> entries)
      : spec_(spec), entries_(std::move(entries)) {}

  const SystemSpec& spec() const { return spec_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const SignatureEntry<T>> entries() const { return entries_; }
  /// Value at (A, B), zero when absent.
  T lookup(std::int64_t A, std::int64_t B) const;
  /// Entries with first coordinate A.
  std::span<const SignatureEntry<T>> slice(std::int64_t A) const;

 private:
  SystemSpec spec_;
  std::vector<SignatureEntry<T>> entries_;
};

using CountTable = SignatureTable<std::uint64_t>;
using AmplitudeTable = SignatureTable<cplx>;

/// Distribution of (sum n_i, sum n_i^d) over all b-tuples, by iterated sliced
/// convolution (squaring a half table when b is even and that is cheaper).
/// Throws BudgetExceeded, with a suggested N, when the table would not fit.
CountTable power_sum_distribution(const SystemSpec& spec, const LatticeBudget& budget = {});
/// Weighted variant: entry = sum over tuples of prod a_{n_i}; weights indexed n + N.
AmplitudeTable power_sum_distribution(const SystemSpec& spec, std::span<const cplx> weights,
                                      const LatticeBudget& budget = {});

/// Number of solutions of the system, sum over (A, B) of count^2. Computed
/// from sorted b-tuples weighted by their permutation counts, sliced by A so
/// that memory stays bounded. Throws BudgetExceeded past budget.max_work.
u128 count_S(const SystemSpec& spec, const LatticeBudget& budget = {});

/// sum over (A, B) of |sum_{tuples -> (A,B)} prod a_{n_i}|^2, i.e. the 2b-th
/// power of the L^{2b} norm of sum_n a_n e(nx + n^d t). Same slicing as count_S.
double sum_squared_amplitudes(const SystemSpec& spec, std::span<const cplx> weights,
                              const LatticeBudget& budget = {});

/// Number of sorted b-tuples from 2N+1 values, C(2N+b, b), as a double.
double multiset_count(int N, int b);
/// Largest N' <= N whose multiset count fits max_work, or 0 if none.
long suggested_N_for_work(int b, std::uint64_t max_work, int N);

/// Solutions where (m_i) is a permutation of (n_i): sum over multisets of
/// (b! / prod m!)^2. Always a lower bound for count_S.
u128 permutation_lower_bound(int N, int b);

/// CSV with columns A,B,count.
void write_csv(const CountTable& table, const std::filesystem::path& path);

}  // namespace dlab
