#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lowfreq {

/// In-place iterative radix-2 FFT. data.size() must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& data, bool inverse = false);

/// Magnitude spectrum of a real signal zero-padded to fft_size (power of
/// two). Returns fft_size/2 + 1 values.
std::vector<double> magnitude_spectrum(const std::vector<double>& signal, std::size_t fft_size);

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n);

}  // namespace lowfreq
