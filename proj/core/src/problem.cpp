#include "nlwave/problem.hpp"

#include <cmath>
#include <stdexcept>

#include "nlwave/sequence_ops.hpp"

namespace nlwave {

Problem::Problem(Grid grid, KernelWeights weights, Nonlinearity f, GridSequence initial_v,
                 GridSequence initial_w, ConvPath path)
    : grid_(grid),
      f_(std::move(f)),
      initial_v_(std::move(initial_v)),
      initial_w_(std::move(initial_w)),
      op_(std::move(weights), grid.size(), path) {
  if (initial_v_.grid() != grid_ || initial_w_.grid() != grid_) {
    throw std::invalid_argument("Problem: initial data must live on the problem grid");
  }
  if (op_.weights().grid_h() != grid_.h()) {
    throw std::invalid_argument("Problem: weight mesh size does not match the grid");
  }
  if (!f_.apply) throw std::invalid_argument("Problem: nonlinearity must be callable");
  const double f0 = f_.apply(0.0);
  if (!(std::abs(f0) <= 1e-14)) {
    throw std::invalid_argument("Problem: nonlinearity must satisfy f(0) = 0");
  }
}

Problem make_problem(const Grid& grid, const Kernel& kernel, const Nonlinearity& f,
                     const std::function<double(double)>& phi,
                     const std::function<double(double)>& psi, ConvPath path) {
  auto [v0, w0] = restrict_initial_data(phi, psi, grid);
  const index_t full_range = grid.i_max() - grid.i_min();
  KernelWeights weights =
      second_difference_weights(kernel, grid.h(), std::max<index_t>(full_range, 1));
  Problem problem(grid, std::move(weights), f, std::move(v0), std::move(w0), path);
  problem.attach_kernel(kernel);
  return problem;
}

bool Problem::acceleration_into(std::span<const double> v, std::span<double> fv_scratch,
                                std::span<double> dw) const {
  // f applied before the convolution, componentwise
  bool finite = true;
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const double y = f_.apply(v[idx]);
    if (!std::isfinite(y)) finite = false;
    fv_scratch[idx] = y;
  }
  if (!finite) return false;
  op_.apply_into(fv_scratch, dw);
  return true;
}

RhsResult rhs(const Problem& problem, const SystemState& state) {
  if (state.v.grid() != problem.grid() || state.w.grid() != problem.grid()) {
    throw std::invalid_argument("rhs: state must live on the problem grid");
  }
  RhsResult result{state.w, GridSequence::zeros(problem.grid()), state.diverged};
  GridSequence fv = GridSequence::zeros(problem.grid());
  if (!problem.acceleration_into(state.v.values(), fv.values(), result.dw.values())) {
    result.diverged = true;
    result.dw.mark_diverged();
  }
  return result;
}

std::pair<GridSequence, GridSequence> restrict_initial_data(
    const std::function<double(double)>& phi, const std::function<double(double)>& psi,
    const Grid& grid) {
  return {restrict_to_grid(phi, grid), restrict_to_grid(psi, grid)};
}

}  // namespace nlwave
