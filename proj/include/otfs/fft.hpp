#pragma once

#include <span>

#include "otfs/common.hpp"

// Thin wrapper over FFTW. Plans are created once per (length, direction)
// and cached process-wide; execution is reentrant.
namespace otfs::fft {

/// In-place unnormalized DFT: X[k] = sum_n x[n] exp(-j 2 pi k n / L).
void forward(std::span<cplx> data);

/// In-place unnormalized inverse: x[n] = sum_k X[k] exp(+j 2 pi k n / L).
void inverse(std::span<cplx> data);

}  // namespace otfs::fft
