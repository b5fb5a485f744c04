#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace areawalk {

/// Splits [0, count) into contiguous blocks, runs `body(begin, end)` for each
/// block on up to `threads` threads and folds the partial results in block
/// order. `body` returns a value of type T; `combine(T&, const T&)` merges,
/// and a default-constructed T must be the identity of `combine`.
///
/// Callers keep reductions exact (integer tallies) or index-ordered so the
/// result does not depend on the thread count.
template <class T, class Body, class Combine>
T parallel_reduce(std::uint64_t count, unsigned threads, T init, Body&& body, Combine&& combine) {
  threads = std::max(1U, threads);
  const std::uint64_t blocks = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1));
  if (blocks <= 1) {
    combine(init, body(std::uint64_t{0}, count));
    return init;
  }
  std::vector<T> partial(blocks);
  std::vector<std::exception_ptr> errors(blocks);
  {
    std::vector<std::jthread> pool;
    pool.reserve(blocks);
    for (std::uint64_t b = 0; b < blocks; ++b) {
      const std::uint64_t begin = count * b / blocks;
      const std::uint64_t end = count * (b + 1) / blocks;
      pool.emplace_back([&, b, begin, end] {
        try {
          partial[b] = body(begin, end);
        } catch (...) {
          errors[b] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& p : partial) combine(init, p);
  return init;
}

}  // namespace areawalk
