#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dlab {

/// Runs fn(chunk) for chunk in [0, chunks) across up to `threads` workers.
/// Chunks are claimed in order; callers merge per-chunk results themselves
/// so that output does not depend on the thread count.
template <class Fn>
void parallel_chunks(std::size_t chunks, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::mutex m;
  std::size_t next = 0;
  std::exception_ptr err;
  auto worker = [&] {
    for (;;) {
      std::size_t c;
      {
        std::lock_guard lock(m);
        if (next >= chunks || err) return;
        c = next++;
      }
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(m);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  pool.clear();
  if (err) std::rethrow_exception(err);
}

}  // namespace dlab
