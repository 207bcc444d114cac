#include <cmath>
#include <random>

#include <doctest.h>

#include "nlwave/experiments.hpp"
#include "nlwave/problem.hpp"
#include "nlwave/sequence_ops.hpp"
#include "oracles.hpp"

using namespace nlwave;

TEST_CASE("nonlinearities") {
  const Nonlinearity quad = nonlinearity_quadratic();
  CHECK(quad(2.0) == 6.0);
  CHECK(quad(0.0) == 0.0);

  const Nonlinearity cubic = nonlinearity_power(3);
  CHECK(cubic(-1.0) == -2.0);
  CHECK(cubic(0.0) == 0.0);
  CHECK_THROWS_AS(nonlinearity_power(1), std::invalid_argument);

  CHECK_THROWS_AS(nonlinearity_custom([](double) { return 1.0; }), std::invalid_argument);
  const Nonlinearity sine = nonlinearity_custom([](double u) { return std::sin(u); }, "sine");
  CHECK(sine(0.0) == 0.0);
}

TEST_CASE("restrict_initial_data") {
  const Grid grid = Grid::from_domain(0.125, -30.0, 30.0);

  SUBCASE("zero data") {
    auto [v, w] = restrict_initial_data([](double) { return 0.0; }, [](double) { return 0.0; },
                                        grid);
    CHECK(oracles::max_abs(v) == 0.0);
    CHECK(oracles::max_abs(w) == 0.0);
  }

  SUBCASE("solitary crest sample hits the amplitude") {
    const SolitaryWave wave(1.5, -15.0);
    const InitialData data = solitary_initial_data(wave);
    auto [v, w] = restrict_initial_data(data.phi, data.psi, grid);
    CHECK(norm_linf(v) == doctest::Approx(1.875).epsilon(1e-14));
    CHECK(v[-120] == doctest::Approx(1.875).epsilon(1e-14));  // x = -15 on the lattice
  }

  SUBCASE("blow-up data at the origin") {
    const InitialData data = blowup_initial_data();
    auto [v, w] = restrict_initial_data(data.phi, data.psi, Grid::from_domain(0.1, -10.0, 10.0));
    CHECK(v[0] == doctest::Approx(-4.0).epsilon(1e-14));
  }
}

namespace {

Problem delta_problem(const Kernel& kernel, double h, const Grid& grid, GridSequence v0) {
  const KernelWeights w = second_difference_weights(kernel, h, grid.i_max() - grid.i_min());
  return Problem(grid, w, nonlinearity_quadratic(), std::move(v0), GridSequence::zeros(grid));
}

}  // namespace

TEST_CASE("rhs structure") {
  const double h = 0.5;
  const Grid grid(h, -10, 10);
  const Kernel b4 = kernel_triangular();

  SUBCASE("zero equilibrium") {
    const Problem problem = delta_problem(b4, h, grid, GridSequence::zeros(grid));
    const RhsResult result = rhs(problem, problem.initial_state());
    CHECK(oracles::max_abs(result.dv) == 0.0);
    CHECK(oracles::max_abs(result.dw) == 0.0);
    CHECK_FALSE(result.diverged);
  }

  SUBCASE("free drift: dv = w when v = 0") {
    std::mt19937 rng(3);
    const GridSequence w = oracles::random_sequence(grid, rng);
    const KernelWeights kw = second_difference_weights(b4, h, grid.i_max() - grid.i_min());
    const Problem problem(grid, kw, nonlinearity_quadratic(), GridSequence::zeros(grid), w);
    const RhsResult result = rhs(problem, problem.initial_state());
    CHECK(oracles::max_abs_diff(result.dv, w) == 0.0);
    CHECK(oracles::max_abs(result.dw) == 0.0);
  }

  SUBCASE("delta input: stencil times f") {
    GridSequence v0 = GridSequence::zeros(grid);
    v0[0] = 1.0;  // f(1) = 2 under the quadratic nonlinearity
    const Problem problem = delta_problem(b4, h, grid, std::move(v0));
    const RhsResult result = rhs(problem, problem.initial_state());
    CHECK(result.dw[0] == doctest::Approx(-4.0));
    CHECK(result.dw[2] == doctest::Approx(2.0));
    CHECK(result.dw[-2] == doctest::Approx(2.0));
    CHECK(result.dw[1] == doctest::Approx(0.0));
  }

  SUBCASE("non-finite nonlinearity output flags divergence") {
    GridSequence v0 = GridSequence::zeros(grid);
    v0[0] = 1e200;  // square overflows
    const Problem problem = delta_problem(b4, h, grid, std::move(v0));
    const RhsResult result = rhs(problem, problem.initial_state());
    CHECK(result.diverged);
  }
}

TEST_CASE("rhs preserves even symmetry bitwise") {
  const Grid grid(0.1, -100, 100);
  const Kernel b1 = kernel_exponential();
  const InitialData data = blowup_initial_data();
  const Problem problem =
      make_problem(grid, b1, nonlinearity_quadratic(), data.phi, data.psi);

  // the data is even; sampling is bitwise even because x enters via x*x
  for (index_t i = 1; i <= grid.i_max(); ++i) {
    REQUIRE(problem.initial_v()[i] == problem.initial_v()[-i]);
  }
  const RhsResult result = rhs(problem, problem.initial_state());
  for (index_t i = 1; i <= grid.i_max(); ++i) {
    CHECK(result.dw[i] == result.dw[-i]);  // exact, not approximate
  }
}

TEST_CASE("rhs translation equivariance away from boundaries") {
  std::mt19937 rng(9);
  const Grid grid(0.25, -40, 40);
  const Kernel b3 = kernel_sech2();
  const KernelWeights w = second_difference_weights(b3, 0.25, grid.i_max() - grid.i_min());

  GridSequence v = GridSequence::zeros(grid);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  for (index_t i = -10; i <= 10; ++i) v[i] = dist(rng);  // compact bump in the middle

  GridSequence v_shift = GridSequence::zeros(grid);
  for (index_t i = -10; i <= 10; ++i) v_shift[i + 1] = v[i];

  const Problem p1(grid, w, nonlinearity_quadratic(), v, GridSequence::zeros(grid),
                   ConvPath::direct);
  const Problem p2(grid, w, nonlinearity_quadratic(), v_shift, GridSequence::zeros(grid),
                   ConvPath::direct);
  const GridSequence dw1 = rhs(p1, p1.initial_state()).dw;
  const GridSequence dw2 = rhs(p2, p2.initial_state()).dw;
  for (index_t i = grid.i_min() + 12; i <= grid.i_max() - 12; ++i) {
    CHECK(dw2[i + 1] == dw1[i]);  // exact shift, same floating-point operations
  }
}

TEST_CASE("linear consistency: triangular kernel at h=1 is the lattice Laplacian") {
  std::mt19937 rng(13);
  const Grid grid(1.0, -30, 30);
  const KernelWeights w =
      second_difference_weights(kernel_triangular(), 1.0, grid.i_max() - grid.i_min());
  const GridSequence v = oracles::random_sequence(grid, rng);
  const Nonlinearity identity{"identity", [](double u) { return u; }};
  const Problem problem(grid, w, identity, v, GridSequence::zeros(grid));
  const GridSequence dw = rhs(problem, problem.initial_state()).dw;
  for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
    const double lattice = v.value(i + 1) - 2.0 * v[i] + v.value(i - 1);
    CHECK(dw[i] == doctest::Approx(lattice).epsilon(1e-13));
  }
}

TEST_CASE("rhs magnitude bound from stencil mass and Young") {
  std::mt19937 rng(17);
  const Kernel kernels[] = {kernel_exponential(), kernel_lorentzian(), kernel_sech2(),
                            kernel_triangular()};
  const Grid grid(0.2, -50, 50);
  for (const auto& kernel : kernels) {
    const KernelWeights w = second_difference_weights(kernel, 0.2, grid.i_max() - grid.i_min());
    const GridSequence v = oracles::random_sequence(grid, rng, 2.0);
    const Problem problem(grid, w, nonlinearity_quadratic(), v, GridSequence::zeros(grid));
    const GridSequence dw = rhs(problem, problem.initial_state()).dw;

    const double m = norm_linf(v);
    double f_max = 0.0;
    for (int k = -2000; k <= 2000; ++k) {
      const double z = m * static_cast<double>(k) / 2000.0;
      f_max = std::max(f_max, std::abs(problem.nonlinearity()(z)));
    }
    CHECK(norm_linf(dw) <= 2.0 * kernel.tv_mass() * f_max * (1.0 + 1e-12));
  }
}

TEST_CASE("problem validation") {
  const Grid grid(0.5, -4, 4);
  const KernelWeights w = second_difference_weights(kernel_triangular(), 0.5, 8);
  const GridSequence z = GridSequence::zeros(grid);

  // mismatched mesh size between weights and grid
  const KernelWeights wrong_h = second_difference_weights(kernel_triangular(), 0.25, 8);
  CHECK_THROWS_AS(Problem(grid, wrong_h, nonlinearity_quadratic(), z, z),
                  std::invalid_argument);

  // initial data on a different grid
  const GridSequence other = GridSequence::zeros(Grid(0.5, -3, 3));
  CHECK_THROWS_AS(Problem(grid, w, nonlinearity_quadratic(), other, z), std::invalid_argument);

  // f(0) != 0 rejected
  const Nonlinearity bad{"bad", [](double u) { return u + 1.0; }};
  CHECK_THROWS_AS(Problem(grid, w, bad, z, z), std::invalid_argument);
}
