#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace kitelab {

// In-place iterative radix-2 FFT.  data.size() must be a power of two.
// inverse=true applies the conjugate transform and the 1/N scale.
void fft_radix2(std::vector<std::complex<double>>& data, bool inverse);

// DFT of any length: radix-2 when the size is a power of two, otherwise
// Bluestein's chirp-z reformulation on top of the radix-2 kernel.
void fft_any(std::vector<std::complex<double>>& data, bool inverse);

// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace kitelab
