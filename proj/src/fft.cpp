#include "kitelab/fft.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace kitelab {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_radix2(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("fft_radix2: size must be a power of two");
    }

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
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
        for (auto& c : data) c /= static_cast<double>(n);
    }
}

namespace {

// Bluestein: X[k] = w[k] * ((x .* w) conv conj(w))[k], w[m] = exp(-i pi m^2 / N).
// The quadratic phase is reduced modulo 2N before the trig call so large
// indices don't lose precision.
void bluestein(std::vector<std::complex<double>>& data) {
    const std::size_t n = data.size();
    const double pi = 3.14159265358979323846;
    std::vector<std::complex<double>> w(n);
    for (std::size_t m = 0; m < n; ++m) {
        const auto sq = static_cast<std::uint64_t>(m) * m % (2 * n);
        const double ang = pi * static_cast<double>(sq) / static_cast<double>(n);
        w[m] = {std::cos(ang), -std::sin(ang)};
    }

    const std::size_t l = next_pow2(2 * n - 1);
    std::vector<std::complex<double>> a(l, {0.0, 0.0});
    std::vector<std::complex<double>> b(l, {0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) {
        a[m] = data[m] * w[m];
        b[m] = std::conj(w[m]);
    }
    for (std::size_t m = 1; m < n; ++m) b[l - m] = std::conj(w[m]);

    fft_radix2(a, false);
    fft_radix2(b, false);
    for (std::size_t m = 0; m < l; ++m) a[m] *= b[m];
    fft_radix2(a, true);

    for (std::size_t m = 0; m < n; ++m) data[m] = a[m] * w[m];
}

}  // namespace

void fft_any(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0) throw std::invalid_argument("fft_any: empty input");
    if (inverse) {
        for (auto& c : data) c = std::conj(c);
    }
    if ((n & (n - 1)) == 0) {
        fft_radix2(data, false);
    } else {
        bluestein(data);
    }
    if (inverse) {
        for (auto& c : data) c = std::conj(c) / static_cast<double>(n);
    }
}

}  // namespace kitelab
