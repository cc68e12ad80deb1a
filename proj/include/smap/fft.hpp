#pragma once

#include <complex>
#include <span>

#include "smap/grid.hpp"

namespace smap::fft {

using Complex = std::complex<double>;

/// In-place forward DFT over the grid, c(xi) = sum_x f(x) exp(-i xi . x).
/// Unnormalized.
void forward(const Grid& grid, std::span<Complex> data);

/// In-place inverse DFT, including the 1/N factor, so that
/// inverse(forward(f)) == f.
void inverse(const Grid& grid, std::span<Complex> data);

/// One-dimensional transforms of length data.size(), same conventions.
void forward_1d(std::span<Complex> data);
void inverse_1d(std::span<Complex> data);

}  // namespace smap::fft
