#include "nlwave/internal/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace nlwave::internal {

unsigned default_threads() {
  static const unsigned cached = [] {
    if (const char* env = std::getenv("NLWAVE_THREADS")) {
      try {
        const long parsed = std::stol(env);
        if (parsed >= 1) return static_cast<unsigned>(parsed);
      } catch (...) {
        // fall through to hardware count on malformed values
      }
      return 1u;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
  }();
  return cached;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = static_cast<std::size_t>(t) * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    workers.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace nlwave::internal
