#pragma once

#include <functional>

#include "nlwave/corpus.hpp"
#include "nlwave/grid.hpp"

namespace nlwave {

/// Composite trapezoid rule on [a, b] with the given number of subintervals.
double trapezoid(const std::function<double(double)>& f, double a, double b,
                 std::size_t n_intervals);

/// L^p norm of f over [a, b] by composite trapezoid quadrature at mesh h_ref.
double lp_norm_continuous(const std::function<double(double)>& f, double p, double a, double b,
                          double h_ref);

/// sup |f| over [a, b] sampled at the given resolution.
double linf_norm_sampled(const std::function<double(double)>& f, double a, double b,
                         double resolution);

/// Comparison of the grid sum h*sum f(x_i) against the integral of f, with
/// the first-order bound h*|f'|_L1 and the second-order bound h^2*|mu|(R)
/// where mu is the distributional second derivative.
struct QuadratureBoundReport {
  double grid_sum = 0.0;
  double reference_integral = 0.0;
  double measured_error = 0.0;
  double first_order_bound = 0.0;   // NaN when f' is unavailable
  double second_order_bound = 0.0;  // NaN when second-derivative info is unavailable
  bool violated = false;
};

QuadratureBoundReport quadrature_error_bound_check(const SmoothTestFunction& f, const Grid& grid);

}  // namespace nlwave
