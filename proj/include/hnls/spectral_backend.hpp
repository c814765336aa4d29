#pragma once

// Thin wrapper over FFTW's real-to-real transforms applied to complex data
// (real and imaginary parts transformed independently).

#include <complex>
#include <span>
#include <vector>

namespace hnls::backend {

using cplx = std::complex<double>;

/// Unnormalized DST-I: y_k = 2 sum_{j=0}^{n-1} x_j sin(pi (j+1)(k+1) / (n+1)).
/// Applying it twice multiplies by 2(n+1).
void dst1(std::span<const cplx> in, std::span<cplx> out);

/// Unnormalized DCT-I on n+2 points with zero end coefficients:
/// y_k = 2 sum_{m=1}^{n} c_m cos(pi m k / (n+1)),  k = 0..n+1.
/// `coeffs` has length n (c_1..c_n); `out` has length n+2.
void dct1_from_interior(std::span<const cplx> coeffs, std::span<cplx> out);

}  // namespace hnls::backend
