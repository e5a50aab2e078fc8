#include "lowfreq/fft.hpp"

#include <cmath>
#include <numbers>

#include "lowfreq/error.hpp"

namespace lowfreq {

void fft_pow2(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (!is_power_of_two(n)) raise(ErrorKind::InvalidParameter, "FFT size must be a power of two");
    if (n == 1) return;

    // bit reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : data) x *= scale;
    }
}

std::vector<double> magnitude_spectrum(const std::vector<double>& signal, std::size_t fft_size) {
    if (!is_power_of_two(fft_size) || fft_size < signal.size()) {
        raise(ErrorKind::InvalidParameter, "fft_size must be a power of two >= signal length");
    }
    std::vector<std::complex<double>> buf(fft_size, {0.0, 0.0});
    for (std::size_t i = 0; i < signal.size(); ++i) buf[i] = {signal[i], 0.0};
    fft_pow2(buf);
    std::vector<double> mags(fft_size / 2 + 1);
    for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = std::abs(buf[k]);
    return mags;
}

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace lowfreq
