#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "nlwave/internal/parallel.hpp"
#include "nlwave/kernel_weights.hpp"
#include "nlwave/sequence_ops.hpp"
#include "oracles.hpp"

using namespace nlwave;

TEST_CASE("parallel_for covers every index exactly once, any thread count") {
  const std::size_t n = 10007;
  for (const unsigned threads : {1u, 2u, 3u, 8u}) {
    std::vector<int> hits(n, 0);
    internal::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) ++hits[i];
    });
    for (std::size_t i = 0; i < n; ++i) REQUIRE(hits[i] == 1);
  }
}

TEST_CASE("chunked evaluation is bitwise independent of the thread count") {
  const std::size_t n = 4096;
  auto run = [&](unsigned threads) {
    std::vector<double> out(n);
    internal::parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        double acc = 0.0;
        for (int k = 1; k <= 64; ++k) {
          acc += std::sin(static_cast<double>(i) / k);
        }
        out[i] = acc;
      }
    });
    return out;
  };
  const std::vector<double> a = run(1);
  for (const unsigned threads : {2u, 4u, 7u}) {
    const std::vector<double> b = run(threads);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(a[i] == b[i]);
  }
}

TEST_CASE("large direct stencil application (parallel regime) matches the oracle") {
  // 2500 x 2500 index pairs crosses the internal parallel threshold
  std::mt19937 rng(99);
  const Grid grid(0.05, -1250, 1249);
  const KernelWeights w =
      second_difference_weights(kernel_exponential(), 0.05, grid.i_max() - grid.i_min());
  const GridSequence g = oracles::random_sequence(grid, rng);

  const GridSequence direct = apply_weights(w, g, ConvPath::direct);
  const GridSequence direct_again = apply_weights(w, g, ConvPath::direct);
  CHECK(oracles::max_abs_diff(direct, direct_again) == 0.0);  // deterministic

  const GridSequence fast = apply_weights(w, g, ConvPath::fft);
  const double scale = std::max(1e-300, oracles::max_abs(direct));
  CHECK(oracles::max_abs_diff(direct, fast) / scale < 1e-12);
}
