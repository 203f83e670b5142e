// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fdx/linalg.hpp"
#include "fdx/rng.hpp"

namespace fdx {

SiChannel generate_si_channel(int n_rx, int n_tx, int m_true, double isolation_db,
                              std::uint64_t seed, double decay_db_per_tap,
                              double rf_cancellation_db) {
    if (n_rx < 1 || n_tx < 1) throw std::invalid_argument("generate_si_channel: antenna counts must be >= 1");
    if (m_true < 1) throw std::invalid_argument("generate_si_channel: m_true must be >= 1");

    SiChannel ch;
    ch.n_rx = n_rx;
    ch.n_tx = n_tx;
    ch.m_true = m_true;
    ch.isolation_db = isolation_db;
    ch.rf_cancellation_db = rf_cancellation_db;
    ch.taps.assign(static_cast<std::size_t>(n_rx),
                   std::vector<std::vector<cplx>>(static_cast<std::size_t>(n_tx)));

    const double target_energy = db_to_linear(-isolation_db);
    for (int i = 0; i < n_rx; ++i) {
        for (int j = 0; j < n_tx; ++j) {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)}));
            std::vector<cplx> h(static_cast<std::size_t>(m_true));
            double energy = 0.0;
            for (int k = 0; k < m_true; ++k) {
                const double profile = db_to_linear(-decay_db_per_tap * k);
                h[static_cast<std::size_t>(k)] = rng.complex_gaussian() * std::sqrt(profile);
                energy += std::norm(h[static_cast<std::size_t>(k)]);
            }
            const double g = std::sqrt(target_energy / energy);
            for (cplx& v : h) v *= g;
            ch.taps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(h);
        }
    }
    return ch;
}

SoiSource make_soi(const OfdmParams& params, int n_symbols, double power_dbm, std::uint64_t seed) {
    SoiSource soi;
    soi.power_dbm = power_dbm;
    const TxFrame frame = generate_frame(params, n_symbols, 1, seed);
    soi.waveform = scale_to_dbm(frame.antennas.front(), power_dbm);
    return soi;
}

namespace {

void check_dims(const TxFrame& frame, const SiChannel& ch) {
    if (static_cast<int>(frame.antennas.size()) != ch.n_tx)
        throw std::invalid_argument("channel: frame antenna count does not match channel tx dimension");
}

/// Amplitude factors taking each unit-power antenna stream to tx_power_dbm
/// exactly (per-antenna, since finite frames fluctuate around unit power).
std::vector<double> antenna_scales(const TxFrame& frame, double tx_power_dbm) {
    std::vector<double> amps;
    amps.reserve(frame.antennas.size());
    const double target_w = dbm_to_watts(tx_power_dbm);
    for (const ComplexSignal& ant : frame.antennas)
        amps.push_back(std::sqrt(target_w / power_watts(ant)));
    return amps;
}

/// Coupled SI at receiver i: sum_j (s * amps[j] * h_ij) * x_j.
ComplexSignal coupled_si(const TxFrame& frame, const SiChannel& ch, int rx,
                         const std::vector<double>& amps, double replica_scale) {
    ComplexSignal acc;
    acc.sample_rate_hz = frame.antennas.front().sample_rate_hz;
    acc.samples.assign(frame.antennas.front().size(), cplx(0.0, 0.0));
    for (int j = 0; j < ch.n_tx; ++j) {
        std::vector<cplx> taps = ch.taps[static_cast<std::size_t>(rx)][static_cast<std::size_t>(j)];
        for (cplx& t : taps) t *= amps[static_cast<std::size_t>(j)] * replica_scale;
        const ComplexSignal part = convolve_fir(frame.antennas[static_cast<std::size_t>(j)], taps);
        for (std::size_t n = 0; n < acc.size(); ++n) acc.samples[n] += part.samples[n];
    }
    return acc;
}

} // namespace

std::vector<ComplexSignal> apply_mimo_channel(const TxFrame& frame, const SiChannel& ch,
                                              const SoiSource* soi, double tx_power_dbm) {
    check_dims(frame, ch);
    const std::vector<double> amps = antenna_scales(frame, tx_power_dbm);
    std::vector<ComplexSignal> out;
    out.reserve(static_cast<std::size_t>(ch.n_rx));
    for (int i = 0; i < ch.n_rx; ++i) {
        ComplexSignal rx = coupled_si(frame, ch, i, amps, 1.0);
        if (soi != nullptr) {
            if (soi->waveform.size() != rx.size())
                throw std::invalid_argument("apply_mimo_channel: soi length mismatch");
            for (std::size_t n = 0; n < rx.size(); ++n)
                rx.samples[n] += soi->waveform.samples[n];
        }
        out.push_back(std::move(rx));
    }
    return out;
}

ComplexSignal rf_cancellation(const ComplexSignal& rx_in, const TxFrame& frame,
                              const SiChannel& ch, int rx_index, double tx_power_dbm) {
    check_dims(frame, ch);
    if (rx_index < 0 || rx_index >= ch.n_rx)
        throw std::invalid_argument("rf_cancellation: rx index out of range");
    const double residual = std::pow(10.0, -ch.rf_cancellation_db / 20.0);
    const std::vector<double> amps = antenna_scales(frame, tx_power_dbm);
    const ComplexSignal replica = coupled_si(frame, ch, rx_index, amps, 1.0 - residual);
    return subtract(rx_in, replica);
}

void save_si_channel(const SiChannel& ch, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_si_channel: cannot open " + path);
    out.precision(17);
    out << "fdx-si-channel " << ch.n_rx << ' ' << ch.n_tx << ' ' << ch.m_true << ' '
        << ch.isolation_db << ' ' << ch.rf_cancellation_db << '\n';
    for (int i = 0; i < ch.n_rx; ++i)
        for (int j = 0; j < ch.n_tx; ++j)
            for (int k = 0; k < ch.m_true; ++k) {
                const cplx v = ch.taps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                      [static_cast<std::size_t>(k)];
                out << i << ' ' << j << ' ' << k << ' '
                    << std::scientific << v.real() << ' ' << v.imag() << '\n';
            }
    if (!out) throw std::runtime_error("save_si_channel: write failed for " + path);
}

SiChannel load_si_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_si_channel: cannot open " + path);
    std::string magic;
    SiChannel ch;
    in >> magic >> ch.n_rx >> ch.n_tx >> ch.m_true >> ch.isolation_db >> ch.rf_cancellation_db;
    if (!in || magic != "fdx-si-channel")
        throw std::runtime_error("load_si_channel: bad header in " + path);
    ch.taps.assign(static_cast<std::size_t>(ch.n_rx),
                   std::vector<std::vector<cplx>>(
                       static_cast<std::size_t>(ch.n_tx),
                       std::vector<cplx>(static_cast<std::size_t>(ch.m_true))));
    int i, j, k;
    double re, im;
    while (in >> i >> j >> k >> re >> im) {
        if (i < 0 || i >= ch.n_rx || j < 0 || j >= ch.n_tx || k < 0 || k >= ch.m_true)
            throw std::runtime_error("load_si_channel: tap index out of range in " + path);
        ch.taps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
               [static_cast<std::size_t>(k)] = cplx(re, im);
    }
    return ch;
}

} // namespace fdx
