#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace invdyn {

/// Splits [0, count) into `workers` contiguous chunks and runs
/// fn(chunk, begin, end) for each, chunk 0 on the calling thread. The chunk
/// boundaries depend only on (count, workers), so callers that merge per-chunk
/// results in chunk order get the same answer as a serial loop.
template <typename Fn>
void parallel_chunks(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(count, 1));
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = count * c / chunks;
    const std::size_t end = count * (c + 1) / chunks;
    try {
      fn(c, begin, end);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(chunks > 0 ? chunks - 1 : 0);
  for (std::size_t c = 1; c < chunks; ++c) threads.emplace_back(run, c);
  run(0);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace invdyn
