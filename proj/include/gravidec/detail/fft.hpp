#pragma once

#include <complex>
#include <span>

namespace gravidec::detail {

enum class FftSign { minus, plus };

/// In-place unnormalized complex DFT,
///   X_k = sum_j x_j exp(-/+ 2 pi i j k / n)   (FftSign::minus / plus).
/// Plans are cached per (n, sign); safe to call from several threads.
void dft(std::span<std::complex<double>> data, FftSign sign);

}  // namespace gravidec::detail
