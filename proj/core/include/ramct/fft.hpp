#pragma once

#include <complex>
#include <vector>

namespace ramct {

using ComplexGrid = std::vector<std::complex<double>>;  // row-major rows x cols

/// Forward 2-D DFT of a real grid (unnormalized).
ComplexGrid fft2(const std::vector<double>& values, int rows, int cols);

/// Forward 2-D DFT of a complex grid (unnormalized).
ComplexGrid fft2(const ComplexGrid& values, int rows, int cols);

/// Inverse 2-D DFT, normalized by 1/(rows*cols).
ComplexGrid ifft2(const ComplexGrid& values, int rows, int cols);

/// Inverse 2-D DFT returning the real part.
std::vector<double> ifft2_real(const ComplexGrid& values, int rows, int cols);

}  // namespace ramct
