#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace knotfermion {

/// Worker count: KNOTFERMION_THREADS if set to a positive integer, else the hardware concurrency.
inline int worker_count() {
  if (const char* s = std::getenv("KNOTFERMION_THREADS")) {
    int v = std::atoi(s);
    if (v > 0) return v;
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Runs body(worker, i) for i in [0, n), item i on worker i % workers. Results must be written
/// to per-item slots, so the outcome does not depend on scheduling. The first exception is rethrown.
inline void parallel_for(std::size_t n, int workers, const std::function<void(int, std::size_t)>& body) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(0, i);
    return;
  }
  std::vector<std::exception_ptr> errs(static_cast<std::size_t>(workers));
  std::vector<std::thread> ts;
  for (int w = 0; w < workers; ++w)
    ts.emplace_back([&, w] {
      try {
        for (std::size_t i = static_cast<std::size_t>(w); i < n; i += static_cast<std::size_t>(workers)) body(w, i);
      } catch (...) {
        errs[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  for (auto& t : ts) t.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace knotfermion
