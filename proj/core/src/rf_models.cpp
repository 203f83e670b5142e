// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/rf_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdx/rng.hpp"

namespace fdx {

double tone_peak_amp_sq(double dbm) { return 2.0 * dbm_to_watts(dbm); }

cplx cubic_from_iip3(double gain_db, double iip3_dbm) {
    if (std::isinf(iip3_dbm)) return {0.0, 0.0};
    const double k = std::pow(10.0, gain_db / 20.0);
    return {-(4.0 / 3.0) * k / tone_peak_amp_sq(iip3_dbm), 0.0};
}

cplx square_from_iip2(double gain_db, double iip2_dbm) {
    if (std::isinf(iip2_dbm)) return {0.0, 0.0};
    const double k = std::pow(10.0, gain_db / 20.0);
    return {k / std::sqrt(tone_peak_amp_sq(iip2_dbm)), 0.0};
}

double cascade_iip3_dbm(double iip3_1_dbm, double iip3_2_dbm, double g1_db) {
    const double inv = 1.0 / dbm_to_watts(iip3_1_dbm) + db_to_linear(g1_db) / dbm_to_watts(iip3_2_dbm);
    return watts_to_dbm(1.0 / inv);
}

double cascade_iip2_dbm(double iip2_1_dbm, double iip2_2_dbm, double g1_db) {
    const double inv = 1.0 / std::sqrt(dbm_to_watts(iip2_1_dbm)) +
                       std::sqrt(db_to_linear(g1_db) / dbm_to_watts(iip2_2_dbm));
    return watts_to_dbm(1.0 / (inv * inv));
}

PolyCoeffs coeffs_from_intercepts(const RxChainParams& p, double vga_gain_db) {
    PolyCoeffs c;
    c.k_lna = std::pow(10.0, p.lna.gain_db / 20.0);
    c.alpha = cubic_from_iip3(p.lna.gain_db, p.lna.iip3_dbm);

    const double bb_gain_db = p.mixer.gain_db + vga_gain_db;
    c.k_bb = std::pow(10.0, bb_gain_db / 20.0);
    const double iip2_bb = cascade_iip2_dbm(p.mixer.iip2_dbm, p.vga.iip2_dbm, p.mixer.gain_db);
    const double iip3_bb = cascade_iip3_dbm(p.mixer.iip3_dbm, p.vga.iip3_dbm, p.mixer.gain_db);
    c.beta = square_from_iip2(bb_gain_db, iip2_bb);
    // Conjugate cubic sized so its two-tone products extrapolate to the same
    // composite IIP3 as a direct cubic would.
    c.gamma = -cubic_from_iip3(bb_gain_db, iip3_bb);
    return c;
}

ComplexSignal apply_lna(const ComplexSignal& x, const PolyCoeffs& c) {
    ComplexSignal out = x;
    for (cplx& v : out.samples) v = c.k_lna * v + c.alpha * std::norm(v) * v;
    return out;
}

ComplexSignal apply_bb_chain(const ComplexSignal& y_rf, const PolyCoeffs& c) {
    ComplexSignal out = y_rf;
    for (cplx& v : out.samples) {
        const cplx conj_v = std::conj(v);
        v = c.k_bb * v + c.beta * std::norm(v) + c.gamma * conj_v * conj_v * conj_v;
    }
    return out;
}

ComplexSignal add_thermal_noise(const ComplexSignal& x, double nf_db, double bandwidth_hz,
                                double gain_so_far_db, std::uint64_t seed) {
    if (bandwidth_hz <= 0.0) throw std::invalid_argument("add_thermal_noise: bandwidth must be positive");
    const double floor_dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + nf_db + gain_so_far_db;
    const double sigma = std::sqrt(dbm_to_watts(floor_dbm));
    Rng rng(seed);
    ComplexSignal out = x;
    for (cplx& v : out.samples) v += sigma * rng.complex_gaussian();
    return out;
}

double agc_select_gain_from_power(double p_vga_in_dbm, const RxChainParams& p) {
    const double want = p.adc_full_scale_dbm - p.papr_backoff_db - p_vga_in_dbm;
    return std::clamp(want, p.vga_gain_min_db, p.vga_gain_max_db);
}

double agc_select_gain(const ComplexSignal& vga_input, const RxChainParams& p) {
    if (vga_input.empty()) throw std::invalid_argument("agc_select_gain: empty signal");
    return agc_select_gain_from_power(power_dbm(vga_input), p);
}

ComplexSignal adc_quantize(const ComplexSignal& x, int bits, double full_scale_dbm) {
    if (bits < 1) throw std::invalid_argument("adc_quantize: bits must be >= 1");
    bits = std::min(bits, 48); // beyond this the grid is below double precision
    const double a_fs = std::sqrt(dbm_to_watts(full_scale_dbm));
    const double step = 2.0 * a_fs / std::pow(2.0, bits);
    const double top = a_fs - 0.5 * step;
    auto q = [&](double v) {
        const double level = (std::floor(v / step) + 0.5) * step;
        return std::clamp(level, -top, top);
    };
    ComplexSignal out = x;
    for (cplx& v : out.samples) v = cplx(q(v.real()), q(v.imag()));
    return out;
}

RxChainResult run_rx_chain(const ComplexSignal& x, const RxChainParams& p, std::uint64_t seed,
                           const RxChainOptions& options) {
    if (x.empty()) throw std::invalid_argument("run_rx_chain: empty input");

    ComplexSignal noise;
    noise.sample_rate_hz = x.sample_rate_hz;
    noise.samples.assign(x.size(), cplx(0.0, 0.0));
    ComplexSignal x1 = x;
    if (options.add_noise) {
        const double gain_at_injection =
            options.noise_point == NoisePoint::ChainInput ? 0.0 : p.lna.gain_db;
        noise = add_thermal_noise(noise, p.noise_figure_db, p.bandwidth_hz, gain_at_injection, seed);
        if (options.noise_point == NoisePoint::ChainInput) x1 = add(x1, noise);
    }

    PolyCoeffs probe = coeffs_from_intercepts(p, 0.0);
    if (options.linear) {
        probe.alpha = probe.beta = probe.gamma = cplx(0.0, 0.0);
    }

    ComplexSignal u = apply_lna(x1, probe);
    if (options.add_noise && options.noise_point == NoisePoint::PostLna) u = add(u, noise);

    const double vga_gain = options.vga_gain_db
                                ? *options.vga_gain_db
                                : agc_select_gain_from_power(power_dbm(u) + p.mixer.gain_db, p);

    PolyCoeffs c = coeffs_from_intercepts(p, vga_gain);
    if (options.linear) {
        c.alpha = c.beta = c.gamma = cplx(0.0, 0.0);
    }

    const ComplexSignal bb = apply_bb_chain(u, c);
    RxChainResult result;
    result.vga_gain_db = vga_gain;
    result.y = options.quantize ? adc_quantize(bb, p.adc_bits, p.adc_full_scale_dbm) : bb;
    result.y.sample_rate_hz = x.sample_rate_hz;

    // Term accounting at the ADC input, splitting the output by polynomial
    // order in the chain input x1.
    const double g_lin = c.k_lna * c.k_bb;
    ChainTermPowers& pw = result.powers;
    pw.total_linear_gain_db = 20.0 * std::log10(g_lin);

    // Noise injected at the chain input rides inside x1 and therefore inside
    // every term; noise injected after the LNA only sees the baseband gain
    // and is subtracted from the higher-order remainder explicitly.
    const bool noise_in_x1 = options.noise_point == NoisePoint::ChainInput;
    const double noise_gain = noise_in_x1 ? g_lin : c.k_bb;

    double p_lin = 0.0, p_2 = 0.0, p_3 = 0.0, p_hi = 0.0, p_n = 0.0, p_q = 0.0, p_tot = 0.0;
    const std::size_t n = x1.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx v = x1.samples[i];
        const cplx lin = g_lin * v;
        const cplx scaled = c.k_lna * v;
        const cplx conj_scaled = std::conj(scaled);
        const cplx second = c.beta * std::norm(scaled);
        const cplx third = c.k_bb * c.alpha * std::norm(v) * v +
                           c.gamma * conj_scaled * conj_scaled * conj_scaled;
        cplx higher = bb.samples[i] - lin - second - third;
        if (!noise_in_x1) higher -= c.k_bb * noise.samples[i];
        p_lin += std::norm(lin);
        p_2 += std::norm(second);
        p_3 += std::norm(third);
        p_hi += std::norm(higher);
        p_n += std::norm(noise_gain * noise.samples[i]);
        p_q += std::norm(result.y.samples[i] - bb.samples[i]);
        p_tot += std::norm(result.y.samples[i]);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    pw.linear_dbm = watts_to_dbm(p_lin * inv_n);
    pw.second_order_dbm = watts_to_dbm(p_2 * inv_n);
    pw.third_order_dbm = watts_to_dbm(p_3 * inv_n);
    pw.higher_order_dbm = watts_to_dbm(p_hi * inv_n);
    pw.noise_dbm = watts_to_dbm(p_n * inv_n);
    pw.quantization_dbm = watts_to_dbm(p_q * inv_n);
    pw.total_dbm = watts_to_dbm(p_tot * inv_n);
    return result;
}

} // namespace fdx
