#pragma once

// Brute-force reference implementations used as test oracles. These stay
// deliberately naive and independent of the library's execution paths.

#include <cmath>
#include <random>
#include <vector>

#include "nlwave/grid.hpp"
#include "nlwave/kernel_weights.hpp"

namespace oracles {

/// Textbook discrete convolution (u*v)_i = sum_j h u_{i-j} v_j on v's range.
inline nlwave::GridSequence convolve_reference(const nlwave::GridSequence& u,
                                               const nlwave::GridSequence& v) {
  nlwave::GridSequence out = nlwave::GridSequence::zeros(v.grid());
  for (nlwave::index_t i = v.i_min(); i <= v.i_max(); ++i) {
    double acc = 0.0;
    for (nlwave::index_t j = v.i_min(); j <= v.i_max(); ++j) {
      acc += u.value(i - j) * v[j];
    }
    out[i] = v.h() * acc;
  }
  return out;
}

/// Naive stencil application (B g)_i = sum_k b_k g_{i-k}, plain double loop.
inline nlwave::GridSequence apply_weights_reference(const nlwave::KernelWeights& w,
                                                    const nlwave::GridSequence& g) {
  nlwave::GridSequence out = nlwave::GridSequence::zeros(g.grid());
  for (nlwave::index_t i = g.i_min(); i <= g.i_max(); ++i) {
    double acc = 0.0;
    for (nlwave::index_t k = -w.max_offset(); k <= w.max_offset(); ++k) {
      acc += w.weight(k) * g.value(i - k);
    }
    out[i] = acc;
  }
  return out;
}

/// Composite trapezoid integral of f over [a, b] with n subintervals.
template <typename F>
double trapezoid_reference(F f, double a, double b, std::size_t n) {
  const double dx = (b - a) / static_cast<double>(n);
  double sum = 0.5 * (f(a) + f(b));
  for (std::size_t k = 1; k < n; ++k) sum += f(a + dx * static_cast<double>(k));
  return sum * dx;
}

inline nlwave::GridSequence random_sequence(const nlwave::Grid& grid, std::mt19937& rng,
                                            double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  for (double& x : values) x = dist(rng);
  return nlwave::GridSequence(grid, std::move(values));
}

inline double max_abs_diff(const nlwave::GridSequence& a, const nlwave::GridSequence& b) {
  double m = 0.0;
  for (nlwave::index_t i = a.i_min(); i <= a.i_max(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

inline double max_abs(const nlwave::GridSequence& a) {
  double m = 0.0;
  for (double x : a.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracles
