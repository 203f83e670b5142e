// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_WAVEFORM_HPP
#define FDX_WAVEFORM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdx/signal.hpp"

namespace fdx {

/// OFDM numerology, defaulting to the WLAN-like profile used by the
/// simulator: 64-point symbol with 48 active carriers, 4x oversampled IDFT
/// (256 samples useful) and a cyclic prefix of 25% of the useful part
/// (64 samples), all at 64 MS/s (15.625 ns per sample).
///
/// Timing note: the quoted 4 us symbol duration is the useful part
/// (256 x 15.625 ns); the prefix adds 1 us, giving 5 us gross per symbol.
/// The prefix ratio follows the WLAN convention where the guard is a quarter
/// of the useful symbol. The 48 active carriers at 250 kHz spacing occupy
/// about 12 MHz around DC, matching the configured channel bandwidth.
struct OfdmParams {
    int qam_order = 16;
    int n_subcarriers = 64;
    int n_data_subcarriers = 48;
    double guard_fraction = 0.25;
    double sample_period_s = 15.625e-9;
    int oversampling = 4;

    int fft_size() const { return n_subcarriers * oversampling; }
    int cp_len() const { return static_cast<int>(guard_fraction * fft_size() + 0.5); }
    int symbol_len() const { return fft_size() + cp_len(); }
    double sample_rate_hz() const { return 1.0 / sample_period_s; }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// Logical subcarrier indices carrying data, in ascending order. The DC
/// carrier and the band-edge carriers are nulled (the numerology is silent on
/// placement, so a WLAN-like symmetric layout is used): k in
/// {-n_data/2..-1, 1..n_data/2}.
std::vector<int> data_subcarrier_indices(const OfdmParams& params);

/// Gray-mapped 16-QAM with unit average symbol energy. Per axis the two bits
/// map as 00->+1, 01->+3, 10->-1, 11->-3 (scaled by 1/sqrt(10)); the first
/// two bits of each nibble select I, the last two select Q, so the nibble
/// 0000 maps to (1+j)/sqrt(10). Bit count must be a multiple of 4.
std::vector<cplx> qam16_map(const std::vector<int>& bits);

/// Inverse of qam16_map (hard decision).
std::vector<int> qam16_demap(const std::vector<cplx>& symbols);

/// Multi-antenna OFDM transmit frame with unit average power per antenna
/// (before any power scaling at the point of use). The QAM payload is
/// retained per antenna for training-based estimation.
struct TxFrame {
    OfdmParams params;
    std::vector<ComplexSignal> antennas;
    std::vector<std::vector<cplx>> data_symbols; // [antenna][symbol * n_data + i]
};

/// One OFDM symbol (useful part + cyclic prefix) from n_data QAM symbols.
/// The IDFT carries a 1/sqrt(n_data) normalisation so unit-energy QAM yields
/// unit average time-domain power.
std::vector<cplx> modulate_symbol(const OfdmParams& params, const std::vector<cplx>& data);

/// Recovers the QAM symbols from the useful (post-prefix) part of a symbol;
/// exact inverse of modulate_symbol in the absence of a channel.
std::vector<cplx> demodulate_symbol(const OfdmParams& params, const std::vector<cplx>& useful);

/// Generates n_tx statistically independent OFDM streams of n_symbols
/// symbols each. Antenna j consumes the substream derive_seed(seed, {j}), so
/// frames are bit-identical under a fixed seed and antennas never share
/// random draws.
TxFrame generate_frame(const OfdmParams& params, int n_symbols, int n_tx, std::uint64_t seed);

/// Writes the frame as interleaved float32 I/Q, one antenna block after
/// another, preceded by the single text header line
/// "fdx-iq <sample_rate_hz> <n_tx> <n_samples_per_antenna>".
void export_frame_iq(const TxFrame& frame, const std::string& path);

} // namespace fdx

#endif
