#pragma once

#include <cstddef>
#include <functional>

namespace nlwave::internal {

/// Effective worker count: NLWAVE_THREADS if set (clamped to >= 1),
/// otherwise the hardware concurrency. Read once per process.
unsigned default_threads();

/// Runs fn(begin, end) over disjoint chunks of [0, n) on the given number of
/// threads. Each index is processed by exactly one worker, so results are
/// independent of the thread count as long as fn writes only its own indices.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace nlwave::internal
