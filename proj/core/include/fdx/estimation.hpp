// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_ESTIMATION_HPP
#define FDX_ESTIMATION_HPP

#include <Eigen/Dense>
#include <array>
#include <string>

#include "fdx/signal.hpp"
#include "fdx/waveform.hpp"

namespace fdx {

/// Stacked per-transmitter FIR estimate of the effective self-interference
/// coupling channel seen by one receiver (antenna coupling, analog
/// cancellation residual, and the receiver chain's scalar gain, which the
/// estimate absorbs). Layout: n_tx blocks of channel_len taps.
struct LinearChannelEstimate {
    int n_tx = 0;
    int channel_len = 0;
    Eigen::VectorXcd taps;
};

/// Coefficients of the four-term digital baseband model
/// y = a1*x + a2*|x|^2 + a3*|x|^2 x + a4*conj(x)^3: a1 is the composite
/// linear gain, a2 the square-law term, a3/a4 the two third-order terms.
struct NonlinearCoeffs {
    std::array<cplx, 4> a{};
};

/// Least-squares fit of the stacked convolution model to a digital-domain
/// capture: returns argmin_h ||y[M-1..N-1] - X_tot h||^2. Intended for a
/// low-transmit-power training capture where the chain is effectively
/// linear. Identical transmit streams (or any other genuine rank deficiency)
/// raise SingularMatrixError.
LinearChannelEstimate estimate_linear_channel(const ComplexSignal& y, const TxFrame& tx,
                                              int channel_len, int observation_len);

/// Regenerates the receiver-chain input implied by the channel estimate:
/// x_hat(n) = sum_j h_hat_ij * x_j(n) over the full frame, carrying whatever
/// fixed complex scale the estimate absorbed (the nonlinear fit re-absorbs
/// it per column, so it is deliberately not corrected here).
ComplexSignal reconstruct_rx_input(const TxFrame& tx, const LinearChannelEstimate& est);

/// Four-column regression matrix [x, |x|^2, |x|^2 x, conj(x)^3] built
/// element-wise from samples M-1..N-1 of the reconstructed input.
Eigen::MatrixXcd build_nonlinear_basis(const ComplexSignal& x_in, int channel_len,
                                       int observation_len);

/// Least-squares fit of the four-term model against an operating-power
/// training capture (no signal of interest present). A constant-envelope
/// input makes the basis collinear and raises SingularMatrixError.
NonlinearCoeffs estimate_nonlinear_coeffs(const ComplexSignal& y, const ComplexSignal& x_in,
                                          int channel_len, int observation_len);

/// Subtracts the regenerated self-interference model from the capture and
/// returns the residual over samples M-1..N-1. With linear_only set, only
/// the a1 term of the supplied coefficients is subtracted (the linear
/// digital cancellation baseline); the remaining coefficients are ignored,
/// so constraining a2..a4 to zero and cancelling in full gives an identical
/// result by construction.
ComplexSignal digital_cancel(const ComplexSignal& y, const ComplexSignal& x_in,
                             const NonlinearCoeffs& coeffs, int channel_len,
                             int observation_len, bool linear_only = false);

/// Linear digital cancellation from an explicit channel estimate:
/// y[M-1..N-1] - X_tot(tx) * est. Used when the linear baseline re-estimates
/// the channel at operating power instead of reusing the two-stage estimate.
ComplexSignal subtract_linear_replica(const ComplexSignal& y, const TxFrame& tx,
                                      const LinearChannelEstimate& est, int observation_len);

/// Trims a component reference to the estimation window M-1..N-1 so it is
/// sample-aligned with digital_cancel output.
ComplexSignal trim_to_window(const ComplexSignal& x, int channel_len, int observation_len);

/// Detector-input SINR in dB: 10*log10(P_soi / P(residual - soi_reference)).
/// soi_reference is the signal-of-interest component re-run through the
/// receiver in isolation; both arguments must be sample-aligned.
double measure_sinr(const ComplexSignal& residual, const ComplexSignal& soi_reference);

/// Labeled text dumps for debugging.
std::string format_estimate(const LinearChannelEstimate& est);
std::string format_coeffs(const NonlinearCoeffs& coeffs);

} // namespace fdx

#endif
