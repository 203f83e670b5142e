// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_FFT_HPP
#define FDX_FFT_HPP

#include <complex>
#include <vector>

namespace fdx {

/// Unnormalised forward DFT (engineering sign convention, X[k] = sum x[n] e^{-j2pi kn/N}).
std::vector<std::complex<double>> fft(const std::vector<std::complex<double>>& x);

/// Inverse DFT scaled by 1/N, so ifft(fft(x)) == x.
std::vector<std::complex<double>> ifft(const std::vector<std::complex<double>>& x);

} // namespace fdx

#endif
