#pragma once

#include <complex>
#include <vector>

namespace pairwise {

using cdouble = std::complex<double>;

// Unnormalized DFT, forward kernel e^{-2*pi*i*j*k/M}. inverse=true uses the
// conjugate kernel (still unnormalized).
std::vector<cdouble> dft(const std::vector<cdouble>& in, bool inverse);

// Linear self-convolution, c_m = sum_j a_j a_{m-j}, m = 0 .. 2N-2,
// via zero-padded FFTs.
std::vector<cdouble> autoconvolve(const std::vector<cdouble>& a);

}  // namespace pairwise
