#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace nlwave {

/// Smooth, rapidly decaying test function with closed-form derivatives.
/// Derivatives are supplied analytically; nothing is differentiated
/// numerically. |f| and its derivatives are negligible beyond |x| > window.
struct SmoothTestFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d4;
  double window = 0.0;
  double integral = 0.0;  // exact value of the integral over the real line
  /// Total variation of the distributional second derivative when known in
  /// closed form; NaN means "integrate |d2| numerically".
  double second_deriv_tv = std::numeric_limits<double>::quiet_NaN();
};

/// Gaussian, sech^2 and x*Gaussian; the fixed corpus used by the
/// discretization-error checks.
const std::vector<SmoothTestFunction>& standard_corpus();

}  // namespace nlwave
