#include "nlwave/sequence_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlwave/internal/fft.hpp"
#include "nlwave/internal/parallel.hpp"

namespace nlwave {

double norm_lp(const GridSequence& u, double p) {
  if (!(p >= 1.0)) {
    throw std::domain_error("norm_lp: p must be >= 1");
  }
  const double h = u.h();
  double sum = 0.0;
  if (p == 1.0) {
    for (double x : u.values()) sum += std::abs(x);
    return h * sum;
  }
  if (p == 2.0) {
    for (double x : u.values()) sum += x * x;
    return std::sqrt(h * sum);
  }
  for (double x : u.values()) sum += std::pow(std::abs(x), p);
  return std::pow(h * sum, 1.0 / p);
}

double norm_l1(const GridSequence& u) { return norm_lp(u, 1.0); }
double norm_l2(const GridSequence& u) { return norm_lp(u, 2.0); }

double norm_linf(const GridSequence& u) {
  double m = 0.0;
  for (double x : u.values()) m = std::max(m, std::abs(x));
  return m;
}

double inner_product(const GridSequence& u, const GridSequence& v) {
  if (u.h() != v.h()) {
    throw std::invalid_argument("inner_product: mesh sizes differ");
  }
  const index_t lo = std::max(u.i_min(), v.i_min());
  const index_t hi = std::min(u.i_max(), v.i_max());
  double sum = 0.0;
  for (index_t i = lo; i <= hi; ++i) sum += u[i] * v[i];
  return u.h() * sum;
}

namespace {

constexpr index_t kFftThreshold = 512;  // direct path wins below this output size

GridSequence convolve_direct(const GridSequence& u, const GridSequence& v) {
  GridSequence out = GridSequence::zeros(v.grid());
  const double h = v.h();
  const index_t n = v.size();
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t local = begin; local < end; ++local) {
      const index_t i = v.i_min() + static_cast<index_t>(local);
      // j restricted so that both v_j and u_{i-j} are in range
      const index_t j_lo = std::max(v.i_min(), i - u.i_max());
      const index_t j_hi = std::min(v.i_max(), i - u.i_min());
      double acc = 0.0;
      for (index_t j = j_lo; j <= j_hi; ++j) acc += u[i - j] * v[j];
      out[i] = h * acc;
    }
  };
  const unsigned threads = static_cast<std::size_t>(n) * static_cast<std::size_t>(u.size()) >= (1u << 21)
                               ? internal::default_threads()
                               : 1u;
  internal::parallel_for(static_cast<std::size_t>(n), threads, worker);
  return out;
}

GridSequence convolve_fft(const GridSequence& u, const GridSequence& v) {
  const auto full = internal::linear_convolution_fft(u.values(), v.values());
  GridSequence out = GridSequence::zeros(v.grid());
  const double h = v.h();
  // full index s corresponds to output grid index i = s + u.i_min + v.i_min
  for (index_t i = v.i_min(); i <= v.i_max(); ++i) {
    const index_t s = i - u.i_min() - v.i_min();
    if (s >= 0 && s < static_cast<index_t>(full.size())) {
      out[i] = h * full[static_cast<std::size_t>(s)];
    }
  }
  return out;
}

}  // namespace

GridSequence convolve(const GridSequence& u, const GridSequence& v, ConvPath path) {
  if (u.h() != v.h()) {
    throw std::invalid_argument("convolve: mesh sizes differ");
  }
  switch (path) {
    case ConvPath::direct:
      return convolve_direct(u, v);
    case ConvPath::fft:
      return convolve_fft(u, v);
    case ConvPath::automatic:
    default:
      return (v.size() >= kFftThreshold && u.size() >= kFftThreshold) ? convolve_fft(u, v)
                                                                      : convolve_direct(u, v);
  }
}

GridSequence diff_forward(const GridSequence& u) {
  GridSequence out = GridSequence::zeros(u.grid());
  const double inv_h = 1.0 / u.h();
  for (index_t i = u.i_min(); i <= u.i_max(); ++i) {
    out[i] = (u.value(i + 1) - u[i]) * inv_h;
  }
  return out;
}

GridSequence diff_backward(const GridSequence& u) {
  GridSequence out = GridSequence::zeros(u.grid());
  const double inv_h = 1.0 / u.h();
  for (index_t i = u.i_min(); i <= u.i_max(); ++i) {
    out[i] = (u[i] - u.value(i - 1)) * inv_h;
  }
  return out;
}

GridSequence diff_second(const GridSequence& u) {
  GridSequence out = GridSequence::zeros(u.grid());
  const double inv_h2 = 1.0 / (u.h() * u.h());
  for (index_t i = u.i_min(); i <= u.i_max(); ++i) {
    out[i] = (u.value(i + 1) - 2.0 * u[i] + u.value(i - 1)) * inv_h2;
  }
  return out;
}

GridSequence restrict_to_grid(const std::function<double(double)>& f, const Grid& grid) {
  std::vector<double> values(static_cast<std::size_t>(grid.size()));
  for (index_t i = grid.i_min(); i <= grid.i_max(); ++i) {
    values[static_cast<std::size_t>(i - grid.i_min())] = f(grid.point(i));
  }
  return GridSequence(grid, std::move(values));
}

double PiecewiseConstantExtension::operator()(double x) const {
  const Grid& g = u_.grid();
  const index_t i = static_cast<index_t>(std::floor(x / g.h()));
  if (i < g.i_min() || i > g.i_max()) return 0.0;
  return u_[i];
}

double PiecewiseLinearExtension::operator()(double x) const {
  const Grid& g = u_.grid();
  const index_t i = static_cast<index_t>(std::floor(x / g.h()));
  if (i < g.i_min() || i > g.i_max()) return 0.0;
  const double left = u_[i];
  const double right = u_.value(i + 1);  // ramps to zero past i_max
  const double frac = (x - g.point(i)) / g.h();
  return left + (right - left) * frac;
}

PiecewiseConstantExtension extend_p0(const GridSequence& u) {
  return PiecewiseConstantExtension(u);
}

PiecewiseLinearExtension extend_p1(const GridSequence& u) { return PiecewiseLinearExtension(u); }

}  // namespace nlwave
