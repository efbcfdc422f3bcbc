#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace phasecade {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Unscaled DFT, in place. Thread safe: plans are cached per thread.
void fft_inplace(cvec& x);

// Inverse DFT scaled by 1/N, in place. fft_inplace then ifft_inplace is the
// identity to machine precision.
void ifft_inplace(cvec& x);

cvec fft(cvec x);
cvec ifft(cvec x);

// Frequency of each DFT bin in cycles per unit time for sample spacing d,
// standard wrap-around order: [0, 1, ..., n/2-1, -n/2, ..., -1] / (n*d).
std::vector<double> fft_frequencies(std::size_t n, double sample_spacing);

}  // namespace phasecade
