#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "nlwave/grid.hpp"
#include "nlwave/kernel.hpp"
#include "nlwave/kernel_weights.hpp"
#include "nlwave/nonlinearity.hpp"

namespace nlwave {

/// State (v, w) of the first-order form v' = w, w' = B f(v).
struct SystemState {
  double t = 0.0;
  GridSequence v;
  GridSequence w;
  bool diverged = false;
};

/// Truncated semi-discrete system on a finite grid: d^2 v_i/dt^2 =
/// sum_j b_{i-j} f(v_j), no boundary terms. Immutable after construction.
class Problem {
 public:
  Problem(Grid grid, KernelWeights weights, Nonlinearity f, GridSequence initial_v,
          GridSequence initial_w, ConvPath path = ConvPath::automatic);

  const Grid& grid() const { return grid_; }
  const KernelWeights& weights() const { return op_.weights(); }
  const ToeplitzOperator& op() const { return op_; }
  const Nonlinearity& nonlinearity() const { return f_; }
  const GridSequence& initial_v() const { return initial_v_; }
  const GridSequence& initial_w() const { return initial_w_; }
  SystemState initial_state() const { return {0.0, initial_v_, initial_w_, false}; }

  /// Kernel the weights came from, when known (used by decay diagnostics).
  const std::optional<Kernel>& kernel() const { return kernel_; }
  void attach_kernel(Kernel kernel) { kernel_ = std::move(kernel); }

  /// dw = B f(v) without allocations; fv_scratch holds f(v). Returns false
  /// when f produced a non-finite value (dw is then unspecified).
  bool acceleration_into(std::span<const double> v, std::span<double> fv_scratch,
                         std::span<double> dw) const;

 private:
  Grid grid_;
  Nonlinearity f_;
  GridSequence initial_v_;
  GridSequence initial_w_;
  ToeplitzOperator op_;
  std::optional<Kernel> kernel_;
};

/// Builds the full-stencil problem for a kernel: K = i_max - i_min.
Problem make_problem(const Grid& grid, const Kernel& kernel, const Nonlinearity& f,
                     const std::function<double(double)>& phi,
                     const std::function<double(double)>& psi,
                     ConvPath path = ConvPath::automatic);

struct RhsResult {
  GridSequence dv;
  GridSequence dw;
  bool diverged = false;
};

/// dv = w, dw = B f(v). Non-finite values of f(v) flag the result as
/// diverged instead of throwing.
RhsResult rhs(const Problem& problem, const SystemState& state);

/// Pointwise sampling of initial data (phi, psi) onto the truncated grid.
std::pair<GridSequence, GridSequence> restrict_initial_data(
    const std::function<double(double)>& phi, const std::function<double(double)>& psi,
    const Grid& grid);

}  // namespace nlwave
