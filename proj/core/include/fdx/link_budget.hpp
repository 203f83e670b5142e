// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_LINK_BUDGET_HPP
#define FDX_LINK_BUDGET_HPP

#include <string>
#include <vector>

#include "fdx/rf_models.hpp"

namespace fdx {

/// Sentinel for "no measurable power" in reports and CSV output.
constexpr double kPowerFloorDbm = -400.0;

double noise_floor_dbm(double bandwidth_hz, double nf_db);
double sensitivity_dbm(double bandwidth_hz, double nf_db, double snr_requirement_db);

/// Friis cascade of per-stage noise figures, in dB. Stage order matters;
/// each stage's noise is divided by the gain preceding it.
double cascaded_nf(const std::vector<StageParams>& stages);

struct LinkBudgetConfig {
    RxChainParams chain;
    double antenna_isolation_db = 40.0;
    double rf_cancellation_db = 20.0;
    int n_tx = 2;
    double soi_power_dbm = -83.9;
    /// Level of the linear SI component left by digital cancellation,
    /// expressed in dB below the thermal floor (analysis assumption).
    double digital_canc_below_floor_db = 12.0;
    double tx_start_dbm = -5.0;
    double tx_stop_dbm = 25.0;
    double tx_step_db = 2.5;
    bool linear_chain = false;
};

/// Power levels of the signal components at the detector input, referred to
/// the receiver chain input, for one transmit power.
struct LinkBudgetRow {
    double tx_power_dbm = 0.0;
    double soi_dbm = 0.0;
    double linear_si_dbm = 0.0;          // after digital cancellation
    double im2_dbm = 0.0;                // 2nd-order RX distortion
    double im3_dbm = 0.0;                // 3rd-order RX distortion
    double thermal_noise_dbm = 0.0;
    double quantization_noise_dbm = 0.0;
    double sinr_db = 0.0;
};

struct LinkBudgetReport {
    std::vector<LinkBudgetRow> rows;
};

/// Analytic component sweep (no waveforms). Per transmit power:
///   - SI at the chain input: tx + 10log10(n_tx) - isolation - rf canc;
///   - per-stage distortion referred to the chain input via the classic
///     intercept laws (3P - 2*IIP3 and 2P - IIP2 with stage intercepts
///     referred through the preceding gain), power-summed over stages. The
///     third-order sum carries a +10log10(8/3) adjustment for the sixth
///     moment of Gaussian-like signals, which keeps the analytic level
///     consistent with what the waveform chain actually produces for OFDM;
///   - linear SI after digital cancellation pinned digital_canc_below_floor_db
///     below the thermal floor (never above its pre-cancellation level);
///   - quantization noise from the ADC word size, full scale and the AGC
///     gain the chain would select for that drive level;
///   - SINR = SOI over the power sum of everything else.
LinkBudgetReport component_power_sweep(const LinkBudgetConfig& cfg);

/// CSV with header: tx_dbm, soi_dbm, then one column per interference
/// component, then sinr_db.
std::string budget_report_csv(const LinkBudgetReport& report);

} // namespace fdx

#endif
