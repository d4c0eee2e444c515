#include "clifft/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace clifft::detail {

void fft_radix2(std::span<std::complex<double>> data, int sign) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw std::invalid_argument("fft length must be a power of two");
  }
  if (n == 1) return;
  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  // Twiddle table w[k] = e^{sign*2*pi*i*k/n}, filled by direct evaluation so
  // rounding does not accumulate across butterflies.
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = sign * 2.0 * std::numbers::pi * double(k) / double(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[start + k];
        const std::complex<double> v =
            data[start + k + len / 2] * twiddle[k * stride];
        data[start + k] = u + v;
        data[start + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace clifft::detail
