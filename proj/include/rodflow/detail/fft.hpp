#ifndef RODFLOW_DETAIL_FFT_HPP
#define RODFLOW_DETAIL_FFT_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace rodflow::detail {

// Real-to-complex DFT, FFTW sign convention:
//   out[k] = sum_j in[j] * exp(-2*pi*i*j*k/n),  k = 0..n/2.
// Plans are cached per size behind a mutex; every call runs on its own
// work buffers, so concurrent calls are safe.
std::vector<std::complex<double>> rfft(const std::vector<double>& in);

// Inverse of rfft up to the factor n (FFTW unnormalized semantics):
//   out[j] = sum_{k=-n/2}^{n/2-1} full[k] * exp(+2*pi*i*j*k/n)
// where full[] is the Hermitian extension of in[] (size n/2+1).
std::vector<double> irfft(const std::vector<std::complex<double>>& in,
                          std::size_t n);

} // namespace rodflow::detail

#endif
