// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_CHANNEL_HPP
#define FDX_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdx/signal.hpp"
#include "fdx/waveform.hpp"

namespace fdx {

/// Self-interference coupling channel of a full-duplex MIMO front end: one
/// short FIR per (rx, tx) antenna pair, normalised so the tap energy of every
/// pair equals -isolation_db exactly, plus the residual level contract of the
/// analog cancellation stage.
struct SiChannel {
    int n_rx = 0;
    int n_tx = 0;
    int m_true = 0;
    double isolation_db = 40.0;
    double rf_cancellation_db = 20.0;
    std::vector<std::vector<std::vector<cplx>>> taps; // [rx][tx][tap]
};

/// Far-end signal of interest: an independent OFDM waveform scaled to the
/// configured receive power exactly.
struct SoiSource {
    double power_dbm = -83.9;
    ComplexSignal waveform;
};

/// Draws i.i.d. complex Gaussian taps with a 3 dB-per-tap decaying power
/// profile, then normalises each (rx, tx) pair so its total energy is
/// -isolation_db. The tap statistics are a modelling choice; only the total
/// isolation is contractual. Deterministic under the seed.
SiChannel generate_si_channel(int n_rx, int n_tx, int m_true, double isolation_db,
                              std::uint64_t seed, double decay_db_per_tap = 3.0,
                              double rf_cancellation_db = 20.0);

SoiSource make_soi(const OfdmParams& params, int n_symbols, double power_dbm, std::uint64_t seed);

/// rx_i = sum_j h_ij * x_j, with every antenna stream scaled to
/// tx_power_dbm first and the signal of interest added afterwards when
/// provided. Exact linear superposition; noise is applied later in the
/// receiver chain.
std::vector<ComplexSignal> apply_mimo_channel(const TxFrame& frame, const SiChannel& ch,
                                              const SoiSource* soi, double tx_power_dbm);

/// Analog cancellation at one receiver input: subtracts a replica of the
/// coupled transmit signals built from the true taps scaled by
/// (1 - 10^(-rf_cancellation_db/20)), so the self-interference component is
/// attenuated by exactly rf_cancellation_db while everything else (signal of
/// interest, noise) passes through untouched. rx_in must come from
/// apply_mimo_channel with the same frame, channel and transmit power.
ComplexSignal rf_cancellation(const ComplexSignal& rx_in, const TxFrame& frame,
                              const SiChannel& ch, int rx_index, double tx_power_dbm);

/// Channel snapshot as a small structured text file (re/im tap pairs).
void save_si_channel(const SiChannel& ch, const std::string& path);
SiChannel load_si_channel(const std::string& path);

} // namespace fdx

#endif
