#include <random>

#include <benchmark/benchmark.h>

#include "nlwave/kernel_weights.hpp"
#include "nlwave/sequence_ops.hpp"

using namespace nlwave;

namespace {

GridSequence random_state(const Grid& grid, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  for (double& x : values) x = dist(rng);
  return GridSequence(grid, std::move(values));
}

void bench_apply(benchmark::State& state, ConvPath path) {
  const auto n = static_cast<index_t>(state.range(0));
  const Grid grid(0.1, -(n / 2), n - 1 - n / 2);
  const KernelWeights weights =
      second_difference_weights(kernel_exponential(), 0.1, grid.i_max() - grid.i_min());
  const ToeplitzOperator op(weights, grid.size(), path);
  const GridSequence g = random_state(grid, 42);
  GridSequence out = GridSequence::zeros(grid);
  for (auto _ : state) {
    op.apply_into(g.values(), out.values());
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

}  // namespace

BENCHMARK_CAPTURE(bench_apply, direct, ConvPath::direct)->Arg(201)->Arg(481)->Arg(961)->Arg(1921);
BENCHMARK_CAPTURE(bench_apply, fft, ConvPath::fft)->Arg(201)->Arg(481)->Arg(961)->Arg(1921);

static void bench_convolve_direct(benchmark::State& state) {
  const auto n = static_cast<index_t>(state.range(0));
  const Grid grid(0.1, 0, n - 1);
  const GridSequence u = random_state(grid, 1);
  const GridSequence v = random_state(grid, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(u, v, ConvPath::direct));
  }
}
BENCHMARK(bench_convolve_direct)->Arg(256)->Arg(1024);

static void bench_convolve_fft(benchmark::State& state) {
  const auto n = static_cast<index_t>(state.range(0));
  const Grid grid(0.1, 0, n - 1);
  const GridSequence u = random_state(grid, 1);
  const GridSequence v = random_state(grid, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(u, v, ConvPath::fft));
  }
}
BENCHMARK(bench_convolve_fft)->Arg(256)->Arg(1024);
