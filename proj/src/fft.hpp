#pragma once

#include <complex>
#include <cstddef>

namespace tfid::detail {

enum class FftSign { forward = -1, backward = 1 };

/// Unnormalized in-place DFT of length n with exponent sign `sign`.
/// Plans are created once per (n, sign) and shared across threads.
void fft_inplace(std::complex<double>* data, std::size_t n, FftSign sign);

}  // namespace tfid::detail
