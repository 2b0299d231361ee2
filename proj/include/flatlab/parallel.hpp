#pragma once

// Data-parallel helpers. Work is cut into fixed-size blocks whose boundaries
// do not depend on the thread count, and partial results are combined in
// block order, so every result is bit-identical for any thread count.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace flatlab {

inline constexpr std::size_t kBlockSize = 4096;

void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(begin, end) for each block of [0, n).
template <class Fn>
void for_each_block(std::size_t n, Fn&& fn) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(thread_count(), blocks));
  auto run = [&](unsigned w) {
    for (std::size_t b = w; b < blocks; b += std::max(1u, workers)) {
      fn(b * kBlockSize, std::min(n, (b + 1) * kBlockSize));
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& t : pool) t.join();
}

/// Sum of term(i) for i in [0, n), accumulated in long double per block.
template <class Term>
long double block_sum(std::size_t n, Term&& term) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<long double> partial(blocks, 0.0L);
  for_each_block(n, [&](std::size_t begin, std::size_t end) {
    long double s = 0.0L;
    for (std::size_t i = begin; i < end; ++i) s += term(i);
    partial[begin / kBlockSize] = s;
  });
  long double total = 0.0L;
  for (long double s : partial) total += s;
  return total;
}

}  // namespace flatlab
