// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_LINALG_HPP
#define FDX_LINALG_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "fdx/signal.hpp"

namespace fdx {

/// Thrown when a least-squares system is rank deficient beyond what diagonal
/// loading can stabilise. The message names the offending condition estimate.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Windowed convolution (data) matrix of a sample block: rows N-M+1, columns
/// M, entry (r, c) = x[M-1 + r - c]. Row r therefore holds the M most recent
/// samples ending at index M-1+r, newest first, so matrix * taps equals the
/// FIR output at sample indices M-1 .. N-1.
///
/// Requires 1 <= M <= N <= x.size(); violations raise std::invalid_argument.
Eigen::MatrixXcd build_convolution_matrix(const ComplexSignal& x, int channel_len, int observation_len);

/// Horizontal stack [X_1 X_2 ... X_k] of per-stream convolution matrices,
/// one block of M columns per transmit stream.
Eigen::MatrixXcd build_stacked_convolution_matrix(const std::vector<ComplexSignal>& streams,
                                                  int channel_len, int observation_len);

/// Minimiser of ||y - A h||^2 for a dense complex system with rows >= cols.
///
/// Solved by column-pivoted Householder QR after unit-norm column
/// equilibration (any minimiser of the criterion is acceptable; the
/// orthogonal route is used for numerical stability). When the equilibrated
/// condition estimate exceeds 1e12 the solve falls back to diagonally loaded
/// normal equations with epsilon = 1e-12 * trace(A^H A) / cols; beyond 1e15
/// the system is treated as rank deficient and SingularMatrixError is
/// thrown. On consistent systems the result is exact to ~1e-10 relative.
Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& y);

/// Direct linear convolution of x with a short FIR, truncated to x's length
/// (output sample n = sum_k taps[k] * x[n-k]).
ComplexSignal convolve_fir(const ComplexSignal& x, const std::vector<cplx>& taps);

} // namespace fdx

#endif
