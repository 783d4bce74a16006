#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace p2race {

// Resolves a --threads style argument: 0 means machine parallelism.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs fn(chunk_index, begin, end) over [0, n) split into `chunks` contiguous
// ranges, one worker per chunk.  Chunk boundaries depend only on n and
// `chunks`, so callers that combine per-chunk buffers in chunk order get
// results independent of scheduling; callers that only do integer reductions
// get results independent of `chunks` as well.  If workers throw, the
// exception from the lowest chunk index is rethrown after all join.
inline void parallel_chunks(
    std::uint64_t n, unsigned chunks,
    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn) {
  chunks = resolve_threads(chunks);
  if (n == 0) return;
  if ((std::uint64_t)chunks > n) chunks = (unsigned)n;
  if (chunks <= 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  const std::uint64_t base = n / chunks, extra = n % chunks;
  std::uint64_t begin = 0;
  for (unsigned c = 0; c < chunks; ++c) {
    std::uint64_t end = begin + base + (c < extra ? 1 : 0);
    workers.emplace_back([&fn, &errors, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
    begin = end;
  }
  for (auto& w : workers) w.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace p2race
