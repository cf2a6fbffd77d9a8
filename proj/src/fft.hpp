#pragma once

#include <complex>
#include <vector>

namespace lplab::detail {

enum class FftDirection { Forward, Backward };

/// Unnormalized in-place DFT over an n-dimensional cube of side N (row-major).
/// Forward uses exp(-2 pi i jk/N), Backward exp(+2 pi i jk/N).
void fft_inplace(int dimension, int samples, std::vector<std::complex<double>>& data,
                 FftDirection direction);

}  // namespace lplab::detail
