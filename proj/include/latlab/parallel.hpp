#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace latlab {

// Runs fn(i) for i in [0, count). Work items must be independent; results
// should be written to preallocated per-index slots so the outcome does not
// depend on scheduling order.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(workers, std::thread::hardware_concurrency() > 0
                                                     ? std::thread::hardware_concurrency()
                                                     : workers);
  pool.reserve(n);
  for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace latlab
