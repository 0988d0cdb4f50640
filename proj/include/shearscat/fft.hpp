// Thin thread-safe wrapper over FFTW double-precision c2c transforms.
// Plans are cached per shape and created with FFTW_ESTIMATE so planning
// is deterministic; execution on caller buffers is safe from multiple
// threads at once.
#ifndef SHEARSCAT_FFT_HPP
#define SHEARSCAT_FFT_HPP

#include <complex>

namespace shearscat::fft {

// out = DFT(in) with the e^{-2 pi i jk/n} kernel, unnormalized.
// in == out is allowed.
void forward_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out);
// Inverse transform including the 1/(n0*n1) normalization.
void inverse_2d(int n0, int n1, const std::complex<double>* in, std::complex<double>* out);

} // namespace shearscat::fft

#endif
