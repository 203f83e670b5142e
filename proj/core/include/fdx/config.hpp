// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#ifndef FDX_CONFIG_HPP
#define FDX_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdx/link_budget.hpp"
#include "fdx/rf_models.hpp"
#include "fdx/waveform.hpp"

namespace fdx {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class LinearBaselineMode { Reestimate, ReuseLowPower };
enum class AverageDomain { Db, Linear };

/// Full simulation configuration. Defaults reproduce the reference parameter
/// tables exactly (system scalars, per-stage receiver parameters, OFDM
/// numerology, sweep layout).
struct SimConfig {
    // system
    double bandwidth_hz = 12.5e6;
    double rx_noise_figure_db = 4.1;
    double snr_requirement_db = 10.0;
    double soi_power_dbm = -83.9;
    double antenna_isolation_db = 40.0;
    double rf_cancellation_db = 20.0;
    int adc_bits = 12;
    double adc_full_scale_dbm = 10.0;
    double papr_backoff_db = 10.0;
    double pa_gain_db = 27.0; // informational: transmit chains are ideal
    int n_tx = 2;
    int n_rx = 2;

    // receiver stages
    StageParams lna{25.0, 43.0, -15.0, 4.1};
    StageParams mixer{6.0, 42.0, 15.0, 4.0};
    StageParams vga{0.0, 43.0, 10.0, 4.0};
    double vga_gain_min_db = 0.0;
    double vga_gain_max_db = 69.0;

    // waveform
    OfdmParams ofdm{};
    int n_symbols = 32; // >= observation_len samples per frame

    // estimation / training
    int channel_len = 5;       // M
    int observation_len = 10000; // N
    int m_true = 5;            // true SI channel length
    double low_power_offset_db = 20.0;
    double min_si_above_floor_db = 15.0;
    double si_decay_db_per_tap = 3.0;
    LinearBaselineMode linear_baseline = LinearBaselineMode::Reestimate;
    NoisePoint noise_injection = NoisePoint::ChainInput;

    // link budget
    double digital_canc_below_floor_db = 12.0;

    // sweep
    double tx_start_dbm = -5.0;
    double tx_stop_dbm = 25.0;
    double tx_step_db = 2.5;
    int realizations = 20;
    AverageDomain average_domain = AverageDomain::Db;

    // mode flags
    bool linear_chain = false;
    bool linear_cancellation_only = false;

    std::uint64_t master_seed = 1;
};

SimConfig default_config();

/// Parses the line-oriented "[section]" / "key = value" format. Missing keys
/// keep their defaults; out-of-range values raise ConfigError naming the key
/// and bound. Unknown keys raise ConfigError when strict, otherwise they are
/// reported through `warnings` (when given) and skipped.
SimConfig parse_config(const std::string& text, bool strict = false,
                       std::vector<std::string>* warnings = nullptr);
SimConfig load_config(const std::string& path, bool strict = false,
                      std::vector<std::string>* warnings = nullptr);

/// Canonical serialisation; parse_config(save_config(c)) == c. Also the
/// input of config_hash.
std::string save_config(const SimConfig& cfg);
void write_config(const SimConfig& cfg, const std::string& path);

/// Range validation for every field; throws ConfigError naming the key.
void validate_config(const SimConfig& cfg);

/// FNV-1a 64-bit hash of the canonical serialisation, as 16 hex digits.
/// The default-config hash is pinned in the test suite; changing any default
/// is a reviewed event.
std::string config_hash(const SimConfig& cfg);

RxChainParams to_rx_chain_params(const SimConfig& cfg);
LinkBudgetConfig to_link_budget_config(const SimConfig& cfg);

bool operator==(const SimConfig& a, const SimConfig& b);

} // namespace fdx

#endif
