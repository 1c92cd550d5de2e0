#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace gencat::util {

/// Worker count for internal parallel sections: hardware concurrency capped
/// by the GENCAT_THREADS environment variable when set.
std::size_t thread_budget();

/// Splits [0, count) into contiguous blocks, one worker per block. Bodies
/// must write to disjoint locations; results are then independent of the
/// thread count.
template <typename F>
void parallel_for(std::size_t count, F&& body) {
  std::size_t workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = count * w / workers;
    std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Peak resident set size of this process in bytes (0 when unavailable).
std::uint64_t peak_rss_bytes();

}  // namespace gencat::util
