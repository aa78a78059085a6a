#include "dlab/lattice/count_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <type_traits>

#include "dlab/errors.hpp"
#include "dlab/util/csv.hpp"
#include "dlab/util/parallel.hpp"

namespace dlab {

std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

void SystemSpec::validate() const {
  if (d < 2) throw ConfigError("power d must be at least 2");
  if (b < 1 || b > 20) throw ConfigError("tuple length b must lie in [1, 20]");
  if (N < 1) throw ConfigError("range bound N must be at least 1");
  long double nd = std::pow(static_cast<long double>(N), d) * b;
  if (nd >= 0x1p62L) throw ConfigError("b N^d does not fit in 62 bits");
}

unsigned LatticeBudget::resolved_threads() const {
  return threads ? threads : std::max(1u, std::thread::hardware_concurrency());
}

template <class T>
T SignatureTable<T>::lookup(std::int64_t A, std::int64_t B) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair{A, B},
                             [](const SignatureEntry<T>& e, const std::pair<std::int64_t, std::int64_t>& k) {
                               return e.A < k.first || (e.A == k.first && e.B < k.second);
                             });
  return (it != entries_.end() && it->A == A && it->B == B) ? it->value : T{};
}

template <class T>
std::span<const SignatureEntry<T>> SignatureTable<T>::slice(std::int64_t A) const {
  auto lo = std::partition_point(entries_.begin(), entries_.end(),
                                 [A](const SignatureEntry<T>& e) { return e.A < A; });
  auto hi = std::partition_point(lo, entries_.end(), [A](const SignatureEntry<T>& e) { return e.A <= A; });
  return {lo, hi};
}

template class SignatureTable<std::uint64_t>;
template class SignatureTable<cplx>;

double multiset_count(int N, int b) {
  double c = 1.0;
  for (int i = 1; i <= b; ++i) c = c * (2.0 * N + i) / i;
  return c;
}

long suggested_N_for_work(int b, std::uint64_t max_work, int N) {
  for (int n = N; n >= 1; --n)
    if (multiset_count(n, b) <= static_cast<double>(max_work)) return n;
  return 0;
}

namespace {

std::vector<std::int64_t> powers(int N, int d) {
  std::vector<std::int64_t> p(2 * N + 1);
  for (int n = -N; n <= N; ++n) p[n + N] = ipow(n, d);
  return p;
}

bool is_zero(std::uint64_t v) { return v == 0; }
bool is_zero(const cplx& v) { return v == cplx{}; }

// ---- sliced convolution ------------------------------------------------------

template <class T>
struct Sliced {
  std::vector<SignatureEntry<T>> entries;
  std::int64_t amin = 0;
  std::vector<std::size_t> start;  // slice of A = amin + i is [start[i], start[i+1])

  std::int64_t amax() const { return amin + static_cast<std::int64_t>(start.size()) - 2; }
  std::span<const SignatureEntry<T>> slice(std::int64_t A) const {
    if (A < amin || A > amax()) return {};
    const auto i = static_cast<std::size_t>(A - amin);
    return {entries.data() + start[i], entries.data() + start[i + 1]};
  }
};

template <class T>
Sliced<T> index_slices(std::vector<SignatureEntry<T>> e) {
  Sliced<T> s;
  if (e.empty()) {
    s.start = {0, 0};
    return s;
  }
  s.amin = e.front().A;
  const std::int64_t amax = e.back().A;
  s.start.assign(static_cast<std::size_t>(amax - s.amin + 2), 0);
  for (const auto& x : e) ++s.start[static_cast<std::size_t>(x.A - s.amin) + 1];
  for (std::size_t i = 1; i < s.start.size(); ++i) s.start[i] += s.start[i - 1];
  s.entries = std::move(e);
  return s;
}

template <class T>
void merge_row(std::int64_t A, std::vector<std::pair<std::int64_t, T>>& row,
               std::vector<SignatureEntry<T>>& out) {
  if (row.empty()) return;
  std::int64_t bmin = row.front().first, bmax = bmin;
  for (const auto& [B, v] : row) {
    bmin = std::min(bmin, B);
    bmax = std::max(bmax, B);
  }
  const auto width = static_cast<std::uint64_t>(bmax - bmin) + 1;
  if (width <= 4 * row.size()) {
    // Dense row: direct accumulation, no sort.
    std::vector<T> dense(width);
    for (const auto& [B, v] : row) dense[static_cast<std::size_t>(B - bmin)] += v;
    for (std::size_t i = 0; i < width; ++i)
      if (!is_zero(dense[i])) out.push_back({A, bmin + static_cast<std::int64_t>(i), dense[i]});
  } else {
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (std::size_t i = 0; i < row.size();) {
      T acc{};
      std::size_t j = i;
      for (; j < row.size() && row[j].first == row[i].first; ++j) acc += row[j].second;
      if (!is_zero(acc)) out.push_back({A, row[i].first, acc});
      i = j;
    }
  }
}

template <class T>
Sliced<T> convolve(const Sliced<T>& x, const Sliced<T>& y, unsigned threads) {
  const std::int64_t lo = x.amin + y.amin, hi = x.amax() + y.amax();
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  const std::size_t chunks = std::min<std::size_t>(count, 64);
  std::vector<std::vector<SignatureEntry<T>>> parts(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    const std::int64_t a0 = lo + static_cast<std::int64_t>(count * c / chunks);
    const std::int64_t a1 = lo + static_cast<std::int64_t>(count * (c + 1) / chunks);
    std::vector<std::pair<std::int64_t, T>> row;
    for (std::int64_t A = a0; A < a1; ++A) {
      row.clear();
      for (std::int64_t a = std::max(x.amin, A - y.amax()); a <= std::min(x.amax(), A - y.amin); ++a)
        for (const auto& p : x.slice(a))
          for (const auto& q : y.slice(A - a)) row.emplace_back(p.B + q.B, p.value * q.value);
      merge_row(A, row, parts[c]);
    }
  });
  std::vector<SignatureEntry<T>> all;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  all.reserve(total);
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return index_slices(std::move(all));
}

template <class T>
void check_table_budget(const SystemSpec& spec, int k, const LatticeBudget& budget) {
  const double cells = (2.0 * k * spec.N + 1) * (2.0 * k * std::pow(spec.N, spec.d) + 1);
  const double bound = std::min(multiset_count(spec.N, k), cells);
  // Output table plus one input table and row scratch.
  const double bytes = 2.5 * bound * sizeof(SignatureEntry<T>);
  if (bytes > static_cast<double>(budget.memory_bytes)) {
    long n = spec.N;
    while (n > 1) {
      --n;
      const double c = (2.0 * k * n + 1) * (2.0 * k * std::pow(n, spec.d) + 1);
      if (2.5 * std::min(multiset_count(static_cast<int>(n), k), c) * sizeof(SignatureEntry<T>) <=
          static_cast<double>(budget.memory_bytes))
        break;
    }
    throw BudgetExceeded("signature table for (d=" + std::to_string(spec.d) + ", b=" +
                             std::to_string(spec.b) + ", N=" + std::to_string(spec.N) +
                             ") exceeds the memory budget; try N=" + std::to_string(n),
                         n);
  }
}

template <class T>
SignatureTable<T> distribution(const SystemSpec& spec, const std::vector<T>& w,
                               const LatticeBudget& budget) {
  spec.validate();
  const unsigned threads = budget.resolved_threads();
  const auto p = powers(spec.N, spec.d);
  std::vector<SignatureEntry<T>> base;
  for (int n = -spec.N; n <= spec.N; ++n)
    if (!is_zero(w[n + spec.N])) base.push_back({n, p[n + spec.N], w[n + spec.N]});
  const Sliced<T> one = index_slices(base);
  Sliced<T> cur = one;
  int k = 1;
  // Even b: square the half table once it is small against the chain work.
  const int half = spec.b / 2;
  for (; k < spec.b; ++k) {
    if (spec.b % 2 == 0 && k == half &&
        cur.entries.size() <= static_cast<std::size_t>(half) * (2 * spec.N + 1)) {
      check_table_budget<T>(spec, spec.b, budget);
      cur = convolve(cur, cur, threads);
      k = spec.b;
      break;
    }
    check_table_budget<T>(spec, k + 1, budget);
    cur = convolve(cur, one, threads);
  }
  return SignatureTable<T>(spec, std::move(cur.entries));
}

// ---- orbit enumeration -------------------------------------------------------

// Coefficients of the Gaussian binomial [M + b - 1 choose b]_q: entry S counts
// sorted b-tuples from {0..M-1} with sum S.
std::vector<long double> sorted_tuple_sums(int M, int b) {
  std::vector<long double> g(1, 1.0L);
  for (int i = 1; i <= b; ++i) {
    const int m = M - 1 + i;
    g.resize(g.size() + static_cast<std::size_t>(M - 1), 0.0L);
    for (std::size_t s = g.size(); s-- > static_cast<std::size_t>(m);) g[s] -= g[s - m];
    for (std::size_t s = static_cast<std::size_t>(i); s < g.size(); ++s) g[s] += g[s - i];
  }
  return g;
}

template <class W>
W from_count(std::uint64_t c) {
  if constexpr (std::is_integral_v<W>)
    return c;
  else
    return W(static_cast<double>(c));
}

template <class W>
struct Leaf {
  std::int64_t A, B;
  W w;
};

// Sum over (A, B) of |group total|^2, grouping sorted b-tuples by signature.
// Tuples are weighted by their permutation count times `lift(n)` products.
template <class W, class Acc, class Square>
Acc orbit_square_sum(const SystemSpec& spec, const std::vector<W>& lift, const LatticeBudget& budget,
                     Square square) {
  spec.validate();
  const double work = multiset_count(spec.N, spec.b);
  if (work > static_cast<double>(budget.max_work)) {
    const long n = suggested_N_for_work(spec.b, budget.max_work, spec.N);
    throw BudgetExceeded("orbit enumeration for (d=" + std::to_string(spec.d) + ", b=" +
                             std::to_string(spec.b) + ", N=" + std::to_string(spec.N) +
                             ") needs " + std::to_string(static_cast<long long>(work)) +
                             " sorted tuples, over the work budget; try N=" + std::to_string(n),
                         n);
  }
  const int N = spec.N, b = spec.b;
  const auto pw = powers(N, spec.d);
  const unsigned threads = budget.resolved_threads();

  // Plan A-blocks whose leaf counts fit the per-thread memory share.
  const auto sums = sorted_tuple_sums(2 * N + 1, b);
  const long double cap = std::max<long double>(
      1e5L, static_cast<long double>(budget.memory_bytes) / (2.5L * sizeof(Leaf<W>) * threads));
  std::vector<std::pair<std::int64_t, std::int64_t>> blocks;  // [A0, A1)
  {
    std::int64_t a0 = -static_cast<std::int64_t>(b) * N;
    long double acc = 0;
    for (std::size_t s = 0; s < sums.size(); ++s) {
      const std::int64_t A = static_cast<std::int64_t>(s) - static_cast<std::int64_t>(b) * N;
      if (acc > 0 && acc + sums[s] > cap) {
        blocks.emplace_back(a0, A);
        a0 = A;
        acc = 0;
      }
      acc += sums[s];
    }
    blocks.emplace_back(a0, static_cast<std::int64_t>(b) * N + 1);
  }

  std::vector<Acc> partial(blocks.size(), Acc{});
  parallel_chunks(blocks.size(), threads, [&](std::size_t blk) {
    const auto [A0, A1] = blocks[blk];
    std::vector<Leaf<W>> leaves;
    // Depth-first over sorted tuples, pruned by the reachable sum range.
    auto dfs = [&](auto&& self, int k, int lo, std::int64_t s, std::int64_t B, std::uint64_t perm,
                   int run, W prod) -> void {
      if (k == b) {
        leaves.push_back({s, B, prod * from_count<W>(perm)});
        return;
      }
      const int r = b - k;
      int vstart = lo;
      const std::int64_t need = A0 - s - static_cast<std::int64_t>(r - 1) * N;
      if (need > vstart) vstart = static_cast<int>(std::min<std::int64_t>(need, N + 1));
      for (int v = vstart; v <= N; ++v) {
        if (s + static_cast<std::int64_t>(r) * v >= A1) break;
        const int nrun = (k > 0 && v == lo) ? run + 1 : 1;
        const std::uint64_t nperm = perm * static_cast<std::uint64_t>(k + 1) / nrun;
        self(self, k + 1, v, s + v, B + pw[v + N], nperm, nrun, prod * lift[v + N]);
      }
    };
    dfs(dfs, 0, -N, 0, 0, 1, 0, W{1});
    std::sort(leaves.begin(), leaves.end(),
              [](const Leaf<W>& x, const Leaf<W>& y) { return x.A < y.A || (x.A == y.A && x.B < y.B); });
    Acc acc{};
    for (std::size_t i = 0; i < leaves.size();) {
      W g{};
      std::size_t j = i;
      for (; j < leaves.size() && leaves[j].A == leaves[i].A && leaves[j].B == leaves[i].B; ++j)
        g += leaves[j].w;
      acc += square(g);
      i = j;
    }
    partial[blk] = acc;
  });
  Acc total{};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

CountTable power_sum_distribution(const SystemSpec& spec, const LatticeBudget& budget) {
  spec.validate();
  return distribution<std::uint64_t>(spec, std::vector<std::uint64_t>(2 * spec.N + 1, 1), budget);
}

AmplitudeTable power_sum_distribution(const SystemSpec& spec, std::span<const cplx> weights,
                                      const LatticeBudget& budget) {
  spec.validate();
  if (weights.size() != static_cast<std::size_t>(2 * spec.N + 1))
    throw ConfigError("weight vector must have 2N+1 entries");
  return distribution<cplx>(spec, std::vector<cplx>(weights.begin(), weights.end()), budget);
}

u128 count_S(const SystemSpec& spec, const LatticeBudget& budget) {
  spec.validate();
  const std::vector<std::uint64_t> ones(2 * spec.N + 1, 1);
  return orbit_square_sum<std::uint64_t, u128>(spec, ones, budget, [](std::uint64_t g) {
    return static_cast<u128>(g) * g;
  });
}

double sum_squared_amplitudes(const SystemSpec& spec, std::span<const cplx> weights,
                              const LatticeBudget& budget) {
  spec.validate();
  if (weights.size() != static_cast<std::size_t>(2 * spec.N + 1))
    throw ConfigError("weight vector must have 2N+1 entries");
  const std::vector<cplx> lift(weights.begin(), weights.end());
  return orbit_square_sum<cplx, double>(spec, lift, budget, [](cplx g) { return std::norm(g); });
}

u128 permutation_lower_bound(int N, int b) {
  SystemSpec{2, b, N}.validate();
  std::vector<u128> binom2(static_cast<std::size_t>((b + 1) * (b + 1)), 0);
  for (int s = 0; s <= b; ++s) {
    u128 c = 1;
    for (int k = 0; k <= s; ++k) {
      binom2[static_cast<std::size_t>(s * (b + 1) + k)] = c * c;
      c = c * static_cast<u128>(s - k) / static_cast<u128>(k + 1);
    }
  }
  std::vector<u128> D(static_cast<std::size_t>(b + 1), 0), E(D.size());
  D[0] = 1;
  for (int v = 0; v < 2 * N + 1; ++v) {
    for (int s = 0; s <= b; ++s) {
      u128 acc = 0;
      for (int k = 0; k <= s; ++k) acc += binom2[static_cast<std::size_t>(s * (b + 1) + k)] * D[s - k];
      E[s] = acc;
    }
    std::swap(D, E);
  }
  return D[b];
}

void write_csv(const CountTable& table, const std::filesystem::path& path) {
  CsvWriter w(path, {"A", "B", "count"});
  for (const auto& e : table.entries()) {
    w.cell(static_cast<long long>(e.A)).cell(static_cast<long long>(e.B));
    w.cell(static_cast<unsigned long long>(e.value));
    w.end_row();
  }
}

}  // namespace dlab
