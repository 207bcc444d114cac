#include "nlwave/kernel_weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlwave/internal/parallel.hpp"

namespace nlwave {

namespace {
constexpr index_t kFftThreshold = 512;
}

KernelWeights::KernelWeights(double grid_h, std::vector<double> half)
    : grid_h_(grid_h), half_(std::move(half)) {
  if (!(grid_h_ > 0.0) || !std::isfinite(grid_h_)) {
    throw std::invalid_argument("KernelWeights: grid_h must be positive and finite");
  }
  if (half_.empty()) throw std::invalid_argument("KernelWeights: need at least b_0");
  for (double b : half_) {
    if (!std::isfinite(b)) throw std::invalid_argument("KernelWeights: non-finite weight");
  }
}

double KernelWeights::abs_sum() const {
  double sum = std::abs(half_[0]);
  for (std::size_t k = 1; k < half_.size(); ++k) sum += 2.0 * std::abs(half_[k]);
  return sum;
}

double KernelWeights::row_sum() const {
  double sum = half_[0];
  for (std::size_t k = 1; k < half_.size(); ++k) sum += 2.0 * half_[k];
  return sum;
}

KernelWeights second_difference_weights(const Kernel& kernel, double h, index_t max_offset,
                                        const WeightOptions& options) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("second_difference_weights: h must be positive and finite");
  }
  if (max_offset < 1) {
    throw std::invalid_argument("second_difference_weights: max_offset must be >= 1");
  }
  std::vector<double> half(static_cast<std::size_t>(max_offset) + 1);
  for (index_t k = 0; k <= max_offset; ++k) {
    const double xk = static_cast<double>(k) * h;
    half[static_cast<std::size_t>(k)] =
        (kernel(xk + h) - 2.0 * kernel(xk) + kernel(xk - h)) / h;
  }
  KernelWeights weights(h, std::move(half));
  if (options.drop_negligible) {
    double max_abs = 0.0;
    for (double b : weights.half_) max_abs = std::max(max_abs, std::abs(b));
    const double cutoff = options.drop_rel_tol * max_abs;
    std::size_t keep = weights.half_.size();
    while (keep > 1 && std::abs(weights.half_[keep - 1]) < cutoff) --keep;
    if (keep < weights.half_.size()) {
      weights.half_.resize(keep);
      weights.truncated_ = true;
    }
  }
  return weights;
}

ToeplitzOperator::ToeplitzOperator(KernelWeights weights, index_t sequence_size, ConvPath path)
    : weights_(std::move(weights)), n_(sequence_size), path_(path) {
  if (n_ < 1) throw std::invalid_argument("ToeplitzOperator: sequence size must be >= 1");
  if (path_ == ConvPath::automatic) {
    path_ = n_ >= kFftThreshold ? ConvPath::fft : ConvPath::direct;
  }
  if (path_ == ConvPath::fft) {
    // full linear convolution of the (2K+1)-tap stencil with an n-vector
    const index_t k_max = weights_.max_offset();
    const std::size_t taps = static_cast<std::size_t>(2 * k_max + 1);
    const std::size_t m = internal::next_pow2(taps + static_cast<std::size_t>(n_) - 1);
    plan_ = internal::fft_plan(m);
    weight_spectrum_.assign(m, {0.0, 0.0});
    for (index_t k = -k_max; k <= k_max; ++k) {
      weight_spectrum_[static_cast<std::size_t>(k + k_max)] = weights_.weight(k);
    }
    plan_->forward(weight_spectrum_);
  }
}

void ToeplitzOperator::apply_direct(std::span<const double> g, std::span<double> out) const {
  const index_t n = n_;
  const index_t k_max = weights_.max_offset();
  const std::span<const double> b = weights_.half();
  auto worker = [&](std::size_t begin, std::size_t end) {
    for (std::size_t ui = begin; ui < end; ++ui) {
      const index_t i = static_cast<index_t>(ui);
      // pair the symmetric offsets: out_i = b_0 g_i + sum_k b_k (g_{i-k} + g_{i+k})
      double acc = b[0] * g[ui];
      const index_t both = std::min({i, n - 1 - i, k_max});
      for (index_t k = 1; k <= both; ++k) {
        acc += b[static_cast<std::size_t>(k)] *
               (g[static_cast<std::size_t>(i - k)] + g[static_cast<std::size_t>(i + k)]);
      }
      const index_t lo_only = std::min(i, k_max);
      for (index_t k = both + 1; k <= lo_only; ++k) {
        acc += b[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(i - k)];
      }
      const index_t hi_only = std::min(n - 1 - i, k_max);
      for (index_t k = both + 1; k <= hi_only; ++k) {
        acc += b[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(i + k)];
      }
      out[ui] = acc;
    }
  };
  const bool big = static_cast<std::size_t>(n) * static_cast<std::size_t>(k_max + 1) >= (1u << 21);
  internal::parallel_for(static_cast<std::size_t>(n), big ? internal::default_threads() : 1u,
                         worker);
}

void ToeplitzOperator::apply_fft(std::span<const double> g, std::span<double> out) const {
  const std::size_t m = plan_->size();
  const index_t k_max = weights_.max_offset();
  std::vector<std::complex<double>> buf(m, {0.0, 0.0});
  for (std::size_t j = 0; j < g.size(); ++j) buf[j] = g[j];
  plan_->forward(buf);
  for (std::size_t s = 0; s < m; ++s) buf[s] *= weight_spectrum_[s];
  plan_->inverse(buf);
  // out_i sits at full-convolution index i + K
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = buf[i + static_cast<std::size_t>(k_max)].real();
  }
}

void ToeplitzOperator::apply_into(std::span<const double> g, std::span<double> out) const {
  if (g.size() != static_cast<std::size_t>(n_) || out.size() != g.size()) {
    throw std::invalid_argument("ToeplitzOperator: sequence length does not match operator");
  }
  if (path_ == ConvPath::fft) {
    apply_fft(g, out);
  } else {
    apply_direct(g, out);
  }
}

GridSequence ToeplitzOperator::apply(const GridSequence& g) const {
  if (g.h() != weights_.grid_h()) {
    throw std::invalid_argument("ToeplitzOperator: mesh size mismatch");
  }
  GridSequence out = GridSequence::zeros(g.grid());
  apply_into(g.values(), out.values());
  return out;
}

GridSequence apply_weights(const KernelWeights& weights, const GridSequence& g, ConvPath path) {
  ToeplitzOperator op(weights, g.size(), path);
  return op.apply(g);
}

}  // namespace nlwave
