#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nlwave {

using index_t = std::int64_t;

/// Uniform grid x_i = i*h over the contiguous index range [i_min, i_max].
///
/// Index ranges may be asymmetric; grid points always lie on the absolute
/// lattice i*h, so two grids with the same mesh size share point locations.
class Grid {
 public:
  /// Degenerate single-point grid at the origin.
  Grid() : Grid(1.0, 0, 0) {}
  Grid(double h, index_t i_min, index_t i_max);

  /// Builds the grid covering [x_left, x_right]. Both endpoints must be
  /// integer multiples of h (relative tolerance 1e-12).
  static Grid from_domain(double h, double x_left, double x_right);

  double h() const { return h_; }
  index_t i_min() const { return i_min_; }
  index_t i_max() const { return i_max_; }
  index_t size() const { return i_max_ - i_min_ + 1; }
  double point(index_t i) const { return static_cast<double>(i) * h_; }
  double x_left() const { return point(i_min_); }
  double x_right() const { return point(i_max_); }
  bool contains(index_t i) const { return i >= i_min_ && i <= i_max_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double h_;
  index_t i_min_;
  index_t i_max_;
};

/// Real values attached to the points of a Grid, one value per index.
///
/// A sequence stands for a two-sided infinite sequence that vanishes outside
/// its index range; value(i) reads zero there. The diverged flag marks states
/// that overflowed during time integration; such values may be non-finite.
class GridSequence {
 public:
  /// Zero value on the degenerate single-point grid.
  GridSequence() : GridSequence(Grid(), {0.0}) {}
  GridSequence(Grid grid, std::vector<double> values);
  static GridSequence zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  double h() const { return grid_.h(); }
  index_t i_min() const { return grid_.i_min(); }
  index_t i_max() const { return grid_.i_max(); }
  index_t size() const { return grid_.size(); }

  /// Value at grid index i, zero outside the stored range.
  double value(index_t i) const {
    return grid_.contains(i) ? values_[static_cast<std::size_t>(i - grid_.i_min())] : 0.0;
  }
  /// Unchecked access by grid index (must be within range).
  double& operator[](index_t i) { return values_[static_cast<std::size_t>(i - grid_.i_min())]; }
  double operator[](index_t i) const { return values_[static_cast<std::size_t>(i - grid_.i_min())]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool all_finite() const;
  bool diverged() const { return diverged_; }
  void mark_diverged() { diverged_ = true; }

 private:
  Grid grid_;
  std::vector<double> values_;
  bool diverged_ = false;
};

}  // namespace nlwave
