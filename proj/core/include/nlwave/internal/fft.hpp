#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace nlwave::internal {

/// Iterative radix-2 complex FFT with precomputed twiddles and bit-reversal
/// permutation. Plans are immutable after construction; transform() writes
/// into caller-owned buffers, so one plan may be shared across threads.
class Radix2Fft {
 public:
  explicit Radix2Fft(std::size_t size);  // size must be a power of two

  std::size_t size() const { return size_; }
  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;  // includes 1/N scaling

 private:
  void transform(std::span<std::complex<double>> data, bool conjugate) const;

  std::size_t size_;
  std::vector<std::size_t> bit_reversal_;
  std::vector<std::complex<double>> twiddles_;  // exp(-2*pi*i*k/size), k < size/2
};

std::size_t next_pow2(std::size_t n);

/// Shared plan for the given power-of-two size, built once per size.
std::shared_ptr<const Radix2Fft> fft_plan(std::size_t size);

/// Full linear convolution c_s = sum_m a_m b_{s-m}, |c| = |a| + |b| - 1.
std::vector<double> linear_convolution_fft(std::span<const double> a, std::span<const double> b);

}  // namespace nlwave::internal
