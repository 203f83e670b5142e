// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_HARNESS_HPP
#define FDX_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdx/channel.hpp"
#include "fdx/config.hpp"
#include "fdx/estimation.hpp"
#include "fdx/rf_models.hpp"

namespace fdx {

/// The three experiment arms of the transmit-power sweep:
///   a) nonlinear receiver chain, linear digital cancellation only;
///   b) nonlinear receiver chain, nonlinear digital cancellation;
///   c) linear receiver chain, nonlinear digital cancellation.
/// Scenario c differs from b only by zeroed nonlinear chain coefficients.
enum class Scenario { LinearCancellation, NonlinearCancellation, LinearChain };

char scenario_tag(Scenario s);
Scenario scenario_from_tag(char tag);

/// Everything a realization draws from the seed stream. Frames, channel and
/// noise seeds are keyed by (power index, realization, purpose) only, never
/// by scenario, so the arms of the experiment see identical randomness.
struct RealizationInputs {
    SiChannel channel;
    TxFrame frame_stage_a;
    TxFrame frame_stage_b;
    TxFrame frame_payload;
    SoiSource soi;
    std::uint64_t seed_noise_a = 0;
    std::uint64_t seed_noise_b = 0;
    std::uint64_t seed_noise_p = 0;
};

RealizationInputs make_realization_inputs(const SimConfig& cfg, int power_index, int realization);

struct ScenarioDiagnostics {
    double low_power_dbm = 0.0;     // stage A transmit power after clamping
    double stage_a_vga_db = 0.0;
    double payload_vga_db = 0.0;    // frozen from stage B onwards
    double si_in_dbm = 0.0;         // payload SI at chain input after RF cancellation
    double soi_ref_dbm = 0.0;       // SOI component at the detector
    double residual_dbm = 0.0;      // interference plus noise at the detector
    ChainTermPowers stage_b_powers; // term breakdown of the operating-power capture
    std::string estimate_text;      // labeled channel estimate / coefficients
};

struct RealizationOutput {
    double sinr_db = 0.0;
    ScenarioDiagnostics diag;
};

/// One complete realization of one scenario at one transmit power:
/// channel draw, low-power linear training, operating-power nonlinear
/// training, payload with the signal of interest, digital cancellation and
/// SINR measurement at receiver 0.
RealizationOutput run_realization(const SimConfig& cfg, const RealizationInputs& in,
                                  double tx_power_dbm, Scenario scenario);

/// Payload SINR with the self-interference path fully disabled (and nothing
/// to cancel): the ideal ceiling set by the SOI-to-noise ratio.
double run_ideal_reference(const SimConfig& cfg, int realization);

struct SweepPoint {
    Scenario scenario = Scenario::LinearCancellation;
    double tx_power_dbm = 0.0;
    double sinr_db = 0.0; // average over realizations
    std::vector<double> per_realization_db;
};

struct SweepResult {
    std::vector<double> tx_powers_dbm;
    std::vector<SweepPoint> points; // scenario-major, powers ascending
};

std::vector<double> sweep_tx_powers(const SimConfig& cfg);

/// Runs the full sweep: every (scenario, tx power, realization) triple, with
/// realizations distributed over a worker pool and merged by index, so the
/// result is identical for any thread count. SINRs are averaged in the dB
/// domain unless the config selects linear-domain averaging.
SweepResult run_sweep(const SimConfig& cfg, const std::vector<Scenario>& scenarios,
                      int n_threads = 0);

/// CSV with header "scenario,tx_power_dbm,sinr_db", one row per
/// (scenario, tx power).
std::string sweep_result_csv(const SweepResult& result);

/// CSV with header "scenario,tx_power_dbm,realization,sinr_db" exposing the
/// per-realization SINRs behind each reported average.
std::string sweep_realizations_csv(const SweepResult& result);

} // namespace fdx

#endif
