#include <benchmark/benchmark.h>

#include "nlwave/experiments.hpp"
#include "nlwave/integrator.hpp"

using namespace nlwave;

namespace {

Problem solitary_problem(double h) {
  const Grid grid = Grid::from_domain(h, -30.0, 30.0);
  const SolitaryWave wave(1.5, -15.0);
  const InitialData data = solitary_initial_data(wave);
  return make_problem(grid, kernel_exponential(), nonlinearity_quadratic(), data.phi, data.psi);
}

}  // namespace

static void bench_rhs(benchmark::State& state) {
  const double h = 30.0 / static_cast<double>(state.range(0));
  const Problem problem = solitary_problem(h);
  const SystemState s = problem.initial_state();
  std::vector<double> fv(static_cast<std::size_t>(problem.grid().size()));
  std::vector<double> dw(fv.size());
  for (auto _ : state) {
    problem.acceleration_into(s.v.values(), fv, dw);
    benchmark::DoNotOptimize(dw.data());
  }
}
BENCHMARK(bench_rhs)->Arg(120)->Arg(240)->Arg(480);

static void bench_rk45_to_t1(benchmark::State& state) {
  const double h = 30.0 / static_cast<double>(state.range(0));
  const Problem problem = solitary_problem(h);
  IntegratorConfig config;
  config.t_end = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(problem, config).stats.rhs_evaluations);
  }
}
BENCHMARK(bench_rk45_to_t1)->Arg(120)->Arg(240);
