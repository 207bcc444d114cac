#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "nlwave/grid.hpp"
#include "nlwave/internal/fft.hpp"
#include "nlwave/kernel.hpp"
#include "nlwave/sequence_ops.hpp"

namespace nlwave {

/// Toeplitz stencil b_k = h*(D+D- beta_h)_k at offsets |k| <= K, i.e. the
/// entries of the matrix B^N in banded form. Weights are stored for k >= 0
/// only; b_{-k} = b_k holds exactly by construction.
class KernelWeights {
 public:
  /// half[k] = b_k for k = 0..K.
  KernelWeights(double grid_h, std::vector<double> half);

  double grid_h() const { return grid_h_; }
  index_t max_offset() const { return static_cast<index_t>(half_.size()) - 1; }
  double weight(index_t k) const {
    const index_t a = k < 0 ? -k : k;
    return a <= max_offset() ? half_[static_cast<std::size_t>(a)] : 0.0;
  }
  std::span<const double> half() const { return half_; }
  bool truncated() const { return truncated_; }

  double abs_sum() const;  // sum_k |b_k| over |k| <= K
  double row_sum() const;  // sum_k b_k over |k| <= K

 private:
  friend KernelWeights second_difference_weights(const Kernel&, double, index_t,
                                                 const struct WeightOptions&);
  double grid_h_;
  std::vector<double> half_;
  bool truncated_ = false;
};

struct WeightOptions {
  /// Opt-in speed cutoff: drop trailing offsets with |b_k| < drop_rel_tol * max|b|.
  bool drop_negligible = false;
  double drop_rel_tol = 1e-15;
};

/// b_k = (beta((k+1)h) - 2*beta(kh) + beta((k-1)h))/h from exact kernel
/// evaluations. K should cover the full offset range of the truncated domain
/// (K = i_max - i_min) unless a cutoff is requested explicitly.
KernelWeights second_difference_weights(const Kernel& kernel, double h, index_t max_offset,
                                        const WeightOptions& options = {});

/// Applies the stencil to a sequence: (B g)_i = sum_k b_k g_{i-k} with zero
/// extension. Holds the FFT plan and weight spectrum for repeated use on
/// sequences of one fixed length; apply() is const and reentrant.
class ToeplitzOperator {
 public:
  ToeplitzOperator(KernelWeights weights, index_t sequence_size,
                   ConvPath path = ConvPath::automatic);

  const KernelWeights& weights() const { return weights_; }
  ConvPath effective_path() const { return path_; }

  GridSequence apply(const GridSequence& g) const;
  void apply_into(std::span<const double> g, std::span<double> out) const;

 private:
  void apply_direct(std::span<const double> g, std::span<double> out) const;
  void apply_fft(std::span<const double> g, std::span<double> out) const;

  KernelWeights weights_;
  index_t n_;
  ConvPath path_;
  std::shared_ptr<const internal::Radix2Fft> plan_;
  std::vector<std::complex<double>> weight_spectrum_;
};

/// One-shot stencil application; builds a transient operator.
GridSequence apply_weights(const KernelWeights& weights, const GridSequence& g,
                           ConvPath path = ConvPath::automatic);

}  // namespace nlwave
