#include "nlwave/internal/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace nlwave::internal {

Radix2Fft::Radix2Fft(std::size_t size) : size_(size) {
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("Radix2Fft: size must be a power of two");
  }
  bit_reversal_.resize(size);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < size) ++log2n;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t rev = 0;
    for (std::size_t b = 0; b < log2n; ++b) {
      rev |= ((i >> b) & 1u) << (log2n - 1 - b);
    }
    bit_reversal_[i] = rev;
  }
  twiddles_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
}

void Radix2Fft::transform(std::span<std::complex<double>> data, bool conjugate) const {
  if (data.size() != size_) {
    throw std::invalid_argument("Radix2Fft: buffer size does not match plan");
  }
  for (std::size_t i = 0; i < size_; ++i) {
    const std::size_t j = bit_reversal_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = size_ / len;
    for (std::size_t start = 0; start < size_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = twiddles_[k * stride];
        if (conjugate) w = std::conj(w);
        const std::complex<double> odd = data[start + k + half] * w;
        const std::complex<double> even = data[start + k];
        data[start + k] = even + odd;
        data[start + k + half] = even - odd;
      }
    }
  }
}

void Radix2Fft::forward(std::span<std::complex<double>> data) const { transform(data, false); }

void Radix2Fft::inverse(std::span<std::complex<double>> data) const {
  transform(data, true);
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& x : data) x *= scale;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::shared_ptr<const Radix2Fft> fft_plan(std::size_t size) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const Radix2Fft>> plans;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = plans.find(size);
  if (it == plans.end()) {
    it = plans.emplace(size, std::make_shared<const Radix2Fft>(size)).first;
  }
  return it->second;
}

std::vector<double> linear_convolution_fft(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out_size = a.size() + b.size() - 1;
  const std::size_t m = next_pow2(out_size);
  auto plan = fft_plan(m);

  std::vector<std::complex<double>> fa(m), fb(m);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  plan->forward(fa);
  plan->forward(fb);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  plan->inverse(fa);

  std::vector<double> out(out_size);
  for (std::size_t i = 0; i < out_size; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace nlwave::internal
