// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_RF_MODELS_HPP
#define FDX_RF_MODELS_HPP

#include <cstdint>
#include <optional>

#include "fdx/signal.hpp"

namespace fdx {

/// Gain, intercept and noise figures of one receiver stage. Intercepts are
/// input-referred at the stage's own input; +infinity means "ideally linear".
struct StageParams {
    double gain_db = 0.0;
    double iip2_dbm = 0.0;
    double iip3_dbm = 0.0;
    double nf_db = 0.0;
};

/// Receiver chain parameterisation: LNA, IQ mixer and VGA stages, ADC word
/// size and full scale, AGC headroom, and the chain noise figure and
/// bandwidth used for thermal noise injection.
struct RxChainParams {
    StageParams lna{25.0, 43.0, -15.0, 4.1};
    StageParams mixer{6.0, 42.0, 15.0, 4.0};
    StageParams vga{0.0, 43.0, 10.0, 4.0}; // gain_db unused, range below
    double vga_gain_min_db = 0.0;
    double vga_gain_max_db = 69.0;
    int adc_bits = 12;
    double adc_full_scale_dbm = 10.0;
    double papr_backoff_db = 10.0;
    double noise_figure_db = 4.1;
    double bandwidth_hz = 12.5e6;
};

/// Memoryless polynomial coefficients of the two implemented stages: the LNA
/// (linear gain plus compressive direct cubic) and the combined mixer/VGA
/// baseband stage (linear gain, square-law term, conjugate cubic).
struct PolyCoeffs {
    double k_lna = 1.0;
    cplx alpha{0.0, 0.0};
    double k_bb = 1.0;
    cplx beta{0.0, 0.0};
    cplx gamma{0.0, 0.0};
};

/// Peak-amplitude-squared of a single real tone whose power is `dbm` under
/// the library power convention (A^2 = 2 * P_watts).
double tone_peak_amp_sq(double dbm);

/// Cubic coefficient magnitude reproducing the given input intercept in a
/// two-tone test: |a3| = (4/3) * k / A_IIP3^2. Returns 0 for an infinite
/// intercept. The returned value is negative real (compressive).
cplx cubic_from_iip3(double gain_db, double iip3_dbm);

/// Square-law coefficient |a2| = k / A_IIP2 (positive real); 0 when infinite.
cplx square_from_iip2(double gain_db, double iip2_dbm);

/// Two-stage input-referred intercept cascades (stage 2 preceded by g1_db of
/// gain): IIP3 combines as powers, IIP2 as coherent voltages.
double cascade_iip3_dbm(double iip3_1_dbm, double iip3_2_dbm, double g1_db);
double cascade_iip2_dbm(double iip2_1_dbm, double iip2_2_dbm, double g1_db);

/// Builds the chain polynomials for a given VGA gain setting. The mixer/VGA
/// pair is collapsed into one baseband stage whose effective intercepts are
/// the two-stage cascades above (independent of the VGA gain setting, since
/// the VGA's own intercepts are referred to its input). The square-law term
/// is sized from the composite IIP2 and the conjugate cubic so that its
/// two-tone products sit at the composite IIP3.
PolyCoeffs coeffs_from_intercepts(const RxChainParams& p, double vga_gain_db);

/// y = k_lna * x + alpha * |x|^2 * x, sample-wise.
ComplexSignal apply_lna(const ComplexSignal& x, const PolyCoeffs& c);

/// y = k_bb * u + beta * |u|^2 + gamma * conj(u)^3, sample-wise.
ComplexSignal apply_bb_chain(const ComplexSignal& y_rf, const PolyCoeffs& c);

/// Adds circular complex Gaussian noise at
/// -174 dBm/Hz + 10*log10(bandwidth) + nf_db + gain_so_far_db total power.
/// Deterministic under the seed.
ComplexSignal add_thermal_noise(const ComplexSignal& x, double nf_db, double bandwidth_hz,
                                double gain_so_far_db, std::uint64_t seed);

/// AGC policy: VGA gain (clamped to the configured range) that places the
/// average power at the ADC input papr_backoff_db below full scale.
/// p_vga_in_dbm is the average power at the VGA input.
double agc_select_gain_from_power(double p_vga_in_dbm, const RxChainParams& p);
double agc_select_gain(const ComplexSignal& vga_input, const RxChainParams& p);

/// Uniform mid-rise quantisation of I and Q with clipping beyond full scale.
/// full_scale_dbm is the power of a complex tone whose I/Q peaks exactly
/// reach the converter limits.
ComplexSignal adc_quantize(const ComplexSignal& x, int bits, double full_scale_dbm);

enum class NoisePoint { ChainInput, PostLna };

struct RxChainOptions {
    bool add_noise = true;
    NoisePoint noise_point = NoisePoint::ChainInput;
    std::optional<double> vga_gain_db{}; // frozen gain; AGC runs when absent
    bool quantize = true;
    bool linear = false; // zero all nonlinear coefficients
};

/// Power accounting of the chain terms, measured at the ADC input (dBm).
/// third_order_dbm is the strictly third-order content in the chain input
/// (LNA cubic through the baseband gain plus the conjugate cubic of the
/// scaled input); higher-order intermodulation between the stages is
/// reported separately. Levels refer to the chain input via
/// total_linear_gain_db.
struct ChainTermPowers {
    double linear_dbm = 0.0;
    double second_order_dbm = 0.0;
    double third_order_dbm = 0.0;
    double higher_order_dbm = 0.0;
    double noise_dbm = 0.0;
    double quantization_dbm = 0.0;
    double total_dbm = 0.0;
    double total_linear_gain_db = 0.0;
};

struct RxChainResult {
    ComplexSignal y;
    double vga_gain_db = 0.0;
    ChainTermPowers powers;
};

/// Full receive chain: thermal noise, LNA polynomial, AGC (or frozen VGA
/// gain), combined mixer/VGA polynomial, ADC. Returns the digital-domain
/// signal together with the selected gain and the term power breakdown.
RxChainResult run_rx_chain(const ComplexSignal& x, const RxChainParams& p, std::uint64_t seed,
                           const RxChainOptions& options = {});

} // namespace fdx

#endif
