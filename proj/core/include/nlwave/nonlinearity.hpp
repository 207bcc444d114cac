#pragma once

#include <functional>
#include <string>

namespace nlwave {

/// Pointwise nonlinearity f with f(0) = 0.
struct Nonlinearity {
  std::string name;
  std::function<double(double)> apply;

  double operator()(double u) const { return apply(u); }
};

/// f(u) = u + u^2.
Nonlinearity nonlinearity_quadratic();

/// f(u) = u + u^p for integer p >= 2.
Nonlinearity nonlinearity_power(int p);

/// Wraps a user function; rejects |f(0)| > 1e-14.
Nonlinearity nonlinearity_custom(std::function<double(double)> fn, std::string name = "custom");

}  // namespace nlwave
