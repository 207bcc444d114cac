#include "nlwave/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlwave {

Grid::Grid(double h, index_t i_min, index_t i_max) : h_(h), i_min_(i_min), i_max_(i_max) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("Grid: mesh size h must be positive and finite");
  }
  if (i_min > i_max) {
    throw std::invalid_argument("Grid: i_min must not exceed i_max");
  }
}

namespace {

index_t aligned_index(double x, double h, const char* which) {
  const double ratio = x / h;
  const double rounded = std::round(ratio);
  const double scale = std::max(1.0, std::abs(ratio));
  if (std::abs(ratio - rounded) > 1e-12 * scale) {
    throw std::invalid_argument(std::string("Grid: ") + which +
                                " is not an integer multiple of h (misaligned grid)");
  }
  return static_cast<index_t>(rounded);
}

}  // namespace

Grid Grid::from_domain(double h, double x_left, double x_right) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("Grid: mesh size h must be positive and finite");
  }
  if (!(x_left < x_right)) {
    throw std::invalid_argument("Grid: x_left must be less than x_right");
  }
  const index_t i_min = aligned_index(x_left, h, "x_left");
  const index_t i_max = aligned_index(x_right, h, "x_right");
  return Grid(h, i_min, i_max);
}

GridSequence::GridSequence(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<index_t>(values_.size()) != grid_.size()) {
    throw std::invalid_argument("GridSequence: value count does not match grid size");
  }
}

GridSequence GridSequence::zeros(const Grid& grid) {
  return GridSequence(grid, std::vector<double>(static_cast<std::size_t>(grid.size()), 0.0));
}

bool GridSequence::all_finite() const {
  for (double x : values_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace nlwave
