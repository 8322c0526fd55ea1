#pragma once

#include <complex>

namespace zk {

// Unnormalized in-place DFTs backed by FFTW.  sign = -1 forward, +1 backward.
// Plans are cached per shape and shared between threads.
void fft_2d(std::complex<double>* data, int n0, int n1, int sign);
void fft_1d(std::complex<double>* data, int n, int sign);

// smallest 2^a 3^b 5^c >= n
int fft_size_at_least(int n);

}  // namespace zk
