// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/waveform.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fdx/fft.hpp"
#include "fdx/rng.hpp"

namespace fdx {

void OfdmParams::validate() const {
    if (qam_order != 16) throw std::invalid_argument("OfdmParams: qam_order must be 16");
    if (n_subcarriers < 2) throw std::invalid_argument("OfdmParams: n_subcarriers must be >= 2");
    if (n_data_subcarriers < 1 || n_data_subcarriers > n_subcarriers - 1)
        throw std::invalid_argument("OfdmParams: n_data_subcarriers out of range");
    if (n_data_subcarriers % 2 != 0)
        throw std::invalid_argument("OfdmParams: n_data_subcarriers must be even");
    if (guard_fraction < 0.0 || guard_fraction > 1.0)
        throw std::invalid_argument("OfdmParams: guard_fraction out of range");
    if (sample_period_s <= 0.0) throw std::invalid_argument("OfdmParams: sample_period_s must be positive");
    if (oversampling < 1) throw std::invalid_argument("OfdmParams: oversampling must be >= 1");
    if (n_data_subcarriers / 2 > n_subcarriers / 2 - 1)
        throw std::invalid_argument("OfdmParams: data carriers do not fit between DC and band edge");
}

std::vector<int> data_subcarrier_indices(const OfdmParams& params) {
    params.validate();
    const int half = params.n_data_subcarriers / 2;
    std::vector<int> idx;
    idx.reserve(params.n_data_subcarriers);
    for (int k = -half; k <= half; ++k) {
        if (k == 0) continue;
        idx.push_back(k);
    }
    return idx;
}

namespace {

constexpr double kQamScale = 0.316227766016837933; // 1/sqrt(10)

double qam16_axis(int b_hi, int b_lo) {
    // Gray code along the amplitude axis -3,-1,+1,+3 <-> 11,10,00,01.
    if (b_hi == 0) return b_lo == 0 ? 1.0 : 3.0;
    return b_lo == 0 ? -1.0 : -3.0;
}

void qam16_axis_demap(double v, int& b_hi, int& b_lo) {
    if (v >= 0.0) {
        b_hi = 0;
        b_lo = v >= 2.0 ? 1 : 0;
    } else {
        b_hi = 1;
        b_lo = v <= -2.0 ? 1 : 0;
    }
}

} // namespace

std::vector<cplx> qam16_map(const std::vector<int>& bits) {
    if (bits.size() % 4 != 0)
        throw std::invalid_argument("qam16_map: bit count must be a multiple of 4");
    std::vector<cplx> out;
    out.reserve(bits.size() / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        const double re = qam16_axis(bits[i], bits[i + 1]);
        const double im = qam16_axis(bits[i + 2], bits[i + 3]);
        out.emplace_back(re * kQamScale, im * kQamScale);
    }
    return out;
}

std::vector<int> qam16_demap(const std::vector<cplx>& symbols) {
    std::vector<int> bits;
    bits.reserve(symbols.size() * 4);
    for (const cplx& s : symbols) {
        int b0, b1, b2, b3;
        qam16_axis_demap(s.real() / kQamScale, b0, b1);
        qam16_axis_demap(s.imag() / kQamScale, b2, b3);
        bits.push_back(b0);
        bits.push_back(b1);
        bits.push_back(b2);
        bits.push_back(b3);
    }
    return bits;
}

std::vector<cplx> modulate_symbol(const OfdmParams& params, const std::vector<cplx>& data) {
    const std::vector<int> idx = data_subcarrier_indices(params);
    if (data.size() != idx.size())
        throw std::invalid_argument("modulate_symbol: wrong number of data symbols");

    const int nfft = params.fft_size();
    std::vector<cplx> spectrum(static_cast<std::size_t>(nfft), cplx(0.0, 0.0));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const int bin = idx[i] >= 0 ? idx[i] : nfft + idx[i];
        spectrum[static_cast<std::size_t>(bin)] = data[i];
    }

    // ifft carries 1/N; rescale so unit-energy QAM gives unit mean power.
    std::vector<cplx> useful = ifft(spectrum);
    const double g = static_cast<double>(nfft) / std::sqrt(static_cast<double>(idx.size()));
    for (cplx& v : useful) v *= g;

    const int cp = params.cp_len();
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(nfft + cp));
    out.insert(out.end(), useful.end() - cp, useful.end());
    out.insert(out.end(), useful.begin(), useful.end());
    return out;
}

std::vector<cplx> demodulate_symbol(const OfdmParams& params, const std::vector<cplx>& useful) {
    const int nfft = params.fft_size();
    if (useful.size() != static_cast<std::size_t>(nfft))
        throw std::invalid_argument("demodulate_symbol: expected the useful part of one symbol");
    const std::vector<int> idx = data_subcarrier_indices(params);
    std::vector<cplx> spectrum = fft(useful);
    const double g = std::sqrt(static_cast<double>(idx.size())) / static_cast<double>(nfft);
    std::vector<cplx> out;
    out.reserve(idx.size());
    for (int k : idx) {
        const int bin = k >= 0 ? k : nfft + k;
        out.push_back(spectrum[static_cast<std::size_t>(bin)] * g);
    }
    return out;
}

TxFrame generate_frame(const OfdmParams& params, int n_symbols, int n_tx, std::uint64_t seed) {
    params.validate();
    if (n_symbols < 1) throw std::invalid_argument("generate_frame: n_symbols must be >= 1");
    if (n_tx < 1) throw std::invalid_argument("generate_frame: n_tx must be >= 1");

    TxFrame frame;
    frame.params = params;
    frame.antennas.resize(static_cast<std::size_t>(n_tx));
    frame.data_symbols.resize(static_cast<std::size_t>(n_tx));

    const int n_data = params.n_data_subcarriers;
    for (int ant = 0; ant < n_tx; ++ant) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(ant)}));
        ComplexSignal& sig = frame.antennas[static_cast<std::size_t>(ant)];
        sig.sample_rate_hz = params.sample_rate_hz();
        sig.samples.reserve(static_cast<std::size_t>(n_symbols) * params.symbol_len());
        std::vector<cplx>& kept = frame.data_symbols[static_cast<std::size_t>(ant)];
        kept.reserve(static_cast<std::size_t>(n_symbols) * n_data);

        std::vector<int> bits(static_cast<std::size_t>(4 * n_data));
        for (int s = 0; s < n_symbols; ++s) {
            for (int& b : bits) b = static_cast<int>(rng.uniform_int(2));
            const std::vector<cplx> data = qam16_map(bits);
            kept.insert(kept.end(), data.begin(), data.end());
            const std::vector<cplx> sym = modulate_symbol(params, data);
            sig.samples.insert(sig.samples.end(), sym.begin(), sym.end());
        }
    }
    return frame;
}

void export_frame_iq(const TxFrame& frame, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_frame_iq: cannot open " + path);
    const std::size_t n = frame.antennas.empty() ? 0 : frame.antennas.front().size();
    char header[96];
    std::snprintf(header, sizeof(header), "fdx-iq %.0f %zu %zu\n",
                  frame.params.sample_rate_hz(), frame.antennas.size(), n);
    out << header;
    for (const ComplexSignal& sig : frame.antennas) {
        for (const cplx& v : sig.samples) {
            const float iq[2] = {static_cast<float>(v.real()), static_cast<float>(v.imag())};
            out.write(reinterpret_cast<const char*>(iq), sizeof(iq));
        }
    }
    if (!out) throw std::runtime_error("export_frame_iq: write failed for " + path);
}

} // namespace fdx
