#pragma once

#include <functional>

#include "nlwave/grid.hpp"

namespace nlwave {

/// Execution path for discrete convolutions. `automatic` switches to the FFT
/// path above a size threshold; both paths agree to 1e-12 relative.
enum class ConvPath { automatic, direct, fft };

/// l_h^p norm (sum h*|u_i|^p)^(1/p). Throws std::domain_error for p < 1.
double norm_lp(const GridSequence& u, double p);
double norm_l1(const GridSequence& u);
double norm_l2(const GridSequence& u);

/// sup-norm over the index range; 0 for the zero sequence.
double norm_linf(const GridSequence& u);

/// l_h^2 inner product sum h*u_i*v_i. Grids must share the mesh size.
double inner_product(const GridSequence& u, const GridSequence& v);

/// Discrete convolution (u*v)_i = sum_j h*u_{i-j}*v_j, indexed on v's range.
/// Throws std::invalid_argument when the mesh sizes differ.
GridSequence convolve(const GridSequence& u, const GridSequence& v,
                      ConvPath path = ConvPath::automatic);

/// Forward difference (D+ u)_i = (u_{i+1} - u_i)/h with zero extension.
GridSequence diff_forward(const GridSequence& u);
/// Backward difference (D- u)_i = (u_i - u_{i-1})/h with zero extension.
GridSequence diff_backward(const GridSequence& u);
/// Second difference (u_{i+1} - 2u_i + u_{i-1})/h^2; equals D+D- exactly.
GridSequence diff_second(const GridSequence& u);

/// Pointwise sampling u_i = f(x_i).
GridSequence restrict_to_grid(const std::function<double(double)>& f, const Grid& grid);

/// Right-continuous step extension: u_i on [x_i, x_{i+1}), zero outside
/// [x_{i_min}, x_{i_max} + h).
class PiecewiseConstantExtension {
 public:
  explicit PiecewiseConstantExtension(GridSequence u) : u_(std::move(u)) {}
  double operator()(double x) const;

 private:
  GridSequence u_;
};

/// Nodal linear interpolant, ramping to zero on the final cell, zero outside
/// [x_{i_min}, x_{i_max} + h).
class PiecewiseLinearExtension {
 public:
  explicit PiecewiseLinearExtension(GridSequence u) : u_(std::move(u)) {}
  double operator()(double x) const;

 private:
  GridSequence u_;
};

PiecewiseConstantExtension extend_p0(const GridSequence& u);
PiecewiseLinearExtension extend_p1(const GridSequence& u);

}  // namespace nlwave
