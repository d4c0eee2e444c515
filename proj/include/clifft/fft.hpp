#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace clifft::detail {

inline bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

/// In-place radix-2 transform: data[k] <- sum_j data[j] e^{sign*2*pi*i*jk/N},
/// unnormalized. N must be a power of two; sign is +1 or -1.
void fft_radix2(std::span<std::complex<double>> data, int sign);

}  // namespace clifft::detail
