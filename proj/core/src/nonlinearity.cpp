#include "nlwave/nonlinearity.hpp"

#include <cmath>
#include <stdexcept>

namespace nlwave {

Nonlinearity nonlinearity_quadratic() {
  return {"quadratic", [](double u) { return u + u * u; }};
}

Nonlinearity nonlinearity_power(int p) {
  if (p < 2) throw std::invalid_argument("nonlinearity_power: p must be an integer >= 2");
  return {"power" + std::to_string(p), [p](double u) {
            double up = u;
            for (int k = 1; k < p; ++k) up *= u;
            return u + up;
          }};
}

Nonlinearity nonlinearity_custom(std::function<double(double)> fn, std::string name) {
  if (!fn) throw std::invalid_argument("nonlinearity_custom: fn must be callable");
  const double at_zero = fn(0.0);
  if (!(std::abs(at_zero) <= 1e-14)) {
    throw std::invalid_argument("nonlinearity_custom: f(0) must vanish (|f(0)| <= 1e-14)");
  }
  return {std::move(name), std::move(fn)};
}

}  // namespace nlwave
