// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

#include "fdx/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace fdx {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Shortest decimal form that parses back exactly.
std::string fmt_double(double v) {
    char buf[40];
    for (int prec : {12, 17}) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

double parse_double(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(val, &pos);
        if (pos != val.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + val + "'");
    }
}

int parse_int(const std::string& key, const std::string& val) {
    const double v = parse_double(key, val);
    if (v != std::floor(v)) throw ConfigError("config: key '" + key + "' expects an integer");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& val) {
    if (val == "true" || val == "1") return true;
    if (val == "false" || val == "0") return false;
    throw ConfigError("config: key '" + key + "' expects true/false");
}

std::uint64_t parse_u64(const std::string& key, const std::string& val) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(val, &pos);
        if (pos != val.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an unsigned integer");
    }
}

struct Entry {
    const char* section;
    const char* key;
    std::function<void(SimConfig&, const std::string&)> set;
    std::function<std::string(const SimConfig&)> get;
};

Entry dbl(const char* sec, const char* key, double SimConfig::*field) {
    return {sec, key,
            [key, field](SimConfig& c, const std::string& v) { c.*field = parse_double(key, v); },
            [field](const SimConfig& c) { return fmt_double(c.*field); }};
}

Entry integer(const char* sec, const char* key, int SimConfig::*field) {
    return {sec, key,
            [key, field](SimConfig& c, const std::string& v) { c.*field = parse_int(key, v); },
            [field](const SimConfig& c) { return std::to_string(c.*field); }};
}

Entry boolean(const char* sec, const char* key, bool SimConfig::*field) {
    return {sec, key,
            [key, field](SimConfig& c, const std::string& v) { c.*field = parse_bool(key, v); },
            [field](const SimConfig& c) { return c.*field ? "true" : "false"; }};
}

Entry stage_dbl(const char* sec, const char* key, StageParams SimConfig::*stage,
                double StageParams::*field) {
    return {sec, key,
            [key, stage, field](SimConfig& c, const std::string& v) {
                c.*stage.*field = parse_double(key, v);
            },
            [stage, field](const SimConfig& c) { return fmt_double(c.*stage.*field); }};
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        dbl("system", "bandwidth_hz", &SimConfig::bandwidth_hz),
        dbl("system", "rx_noise_figure_db", &SimConfig::rx_noise_figure_db),
        dbl("system", "snr_requirement_db", &SimConfig::snr_requirement_db),
        dbl("system", "soi_power_dbm", &SimConfig::soi_power_dbm),
        dbl("system", "antenna_isolation_db", &SimConfig::antenna_isolation_db),
        dbl("system", "rf_cancellation_db", &SimConfig::rf_cancellation_db),
        integer("system", "adc_bits", &SimConfig::adc_bits),
        dbl("system", "adc_full_scale_dbm", &SimConfig::adc_full_scale_dbm),
        dbl("system", "papr_backoff_db", &SimConfig::papr_backoff_db),
        dbl("system", "pa_gain_db", &SimConfig::pa_gain_db),
        integer("system", "n_tx", &SimConfig::n_tx),
        integer("system", "n_rx", &SimConfig::n_rx),

        stage_dbl("lna", "gain_db", &SimConfig::lna, &StageParams::gain_db),
        stage_dbl("lna", "iip2_dbm", &SimConfig::lna, &StageParams::iip2_dbm),
        stage_dbl("lna", "iip3_dbm", &SimConfig::lna, &StageParams::iip3_dbm),
        stage_dbl("lna", "nf_db", &SimConfig::lna, &StageParams::nf_db),
        stage_dbl("mixer", "gain_db", &SimConfig::mixer, &StageParams::gain_db),
        stage_dbl("mixer", "iip2_dbm", &SimConfig::mixer, &StageParams::iip2_dbm),
        stage_dbl("mixer", "iip3_dbm", &SimConfig::mixer, &StageParams::iip3_dbm),
        stage_dbl("mixer", "nf_db", &SimConfig::mixer, &StageParams::nf_db),
        dbl("vga", "gain_min_db", &SimConfig::vga_gain_min_db),
        dbl("vga", "gain_max_db", &SimConfig::vga_gain_max_db),
        stage_dbl("vga", "iip2_dbm", &SimConfig::vga, &StageParams::iip2_dbm),
        stage_dbl("vga", "iip3_dbm", &SimConfig::vga, &StageParams::iip3_dbm),
        stage_dbl("vga", "nf_db", &SimConfig::vga, &StageParams::nf_db),

        {"ofdm", "qam_order",
         [](SimConfig& c, const std::string& v) { c.ofdm.qam_order = parse_int("qam_order", v); },
         [](const SimConfig& c) { return std::to_string(c.ofdm.qam_order); }},
        {"ofdm", "n_subcarriers",
         [](SimConfig& c, const std::string& v) { c.ofdm.n_subcarriers = parse_int("n_subcarriers", v); },
         [](const SimConfig& c) { return std::to_string(c.ofdm.n_subcarriers); }},
        {"ofdm", "n_data_subcarriers",
         [](SimConfig& c, const std::string& v) {
             c.ofdm.n_data_subcarriers = parse_int("n_data_subcarriers", v);
         },
         [](const SimConfig& c) { return std::to_string(c.ofdm.n_data_subcarriers); }},
        {"ofdm", "guard_fraction",
         [](SimConfig& c, const std::string& v) { c.ofdm.guard_fraction = parse_double("guard_fraction", v); },
         [](const SimConfig& c) { return fmt_double(c.ofdm.guard_fraction); }},
        {"ofdm", "sample_period_ns",
         [](SimConfig& c, const std::string& v) {
             c.ofdm.sample_period_s = parse_double("sample_period_ns", v) * 1e-9;
         },
         [](const SimConfig& c) { return fmt_double(c.ofdm.sample_period_s * 1e9); }},
        {"ofdm", "oversampling",
         [](SimConfig& c, const std::string& v) { c.ofdm.oversampling = parse_int("oversampling", v); },
         [](const SimConfig& c) { return std::to_string(c.ofdm.oversampling); }},
        integer("ofdm", "n_symbols", &SimConfig::n_symbols),

        integer("estimation", "channel_len", &SimConfig::channel_len),
        integer("estimation", "observation_len", &SimConfig::observation_len),
        integer("estimation", "m_true", &SimConfig::m_true),
        dbl("estimation", "low_power_offset_db", &SimConfig::low_power_offset_db),
        dbl("estimation", "min_si_above_floor_db", &SimConfig::min_si_above_floor_db),
        dbl("estimation", "si_decay_db_per_tap", &SimConfig::si_decay_db_per_tap),
        {"estimation", "linear_baseline",
         [](SimConfig& c, const std::string& v) {
             if (v == "reestimate") c.linear_baseline = LinearBaselineMode::Reestimate;
             else if (v == "reuse") c.linear_baseline = LinearBaselineMode::ReuseLowPower;
             else throw ConfigError("config: key 'linear_baseline' expects reestimate|reuse");
         },
         [](const SimConfig& c) {
             return c.linear_baseline == LinearBaselineMode::Reestimate ? "reestimate" : "reuse";
         }},
        {"estimation", "noise_injection",
         [](SimConfig& c, const std::string& v) {
             if (v == "chain_input") c.noise_injection = NoisePoint::ChainInput;
             else if (v == "post_lna") c.noise_injection = NoisePoint::PostLna;
             else throw ConfigError("config: key 'noise_injection' expects chain_input|post_lna");
         },
         [](const SimConfig& c) {
             return c.noise_injection == NoisePoint::ChainInput ? "chain_input" : "post_lna";
         }},

        dbl("link_budget", "digital_canc_below_floor_db", &SimConfig::digital_canc_below_floor_db),

        dbl("sweep", "tx_start_dbm", &SimConfig::tx_start_dbm),
        dbl("sweep", "tx_stop_dbm", &SimConfig::tx_stop_dbm),
        dbl("sweep", "tx_step_db", &SimConfig::tx_step_db),
        integer("sweep", "realizations", &SimConfig::realizations),
        {"sweep", "average_domain",
         [](SimConfig& c, const std::string& v) {
             if (v == "db") c.average_domain = AverageDomain::Db;
             else if (v == "linear") c.average_domain = AverageDomain::Linear;
             else throw ConfigError("config: key 'average_domain' expects db|linear");
         },
         [](const SimConfig& c) { return c.average_domain == AverageDomain::Db ? "db" : "linear"; }},

        boolean("flags", "linear_chain", &SimConfig::linear_chain),
        boolean("flags", "linear_cancellation_only", &SimConfig::linear_cancellation_only),

        {"seeds", "master",
         [](SimConfig& c, const std::string& v) { c.master_seed = parse_u64("master", v); },
         [](const SimConfig& c) { return std::to_string(c.master_seed); }},
    };
    return table;
}

void check_range(double v, double lo, double hi, const char* key) {
    if (std::isnan(v) || v < lo || v > hi) {
        std::ostringstream msg;
        msg << "config: key '" << key << "' = " << v << " outside [" << lo << ", " << hi << "]";
        throw ConfigError(msg.str());
    }
}

void check_intercept(double v, const char* key) {
    // +inf is the documented "ideally linear" switch.
    if (std::isinf(v) && v > 0) return;
    check_range(v, -100.0, 100.0, key);
}

} // namespace

SimConfig default_config() { return SimConfig{}; }

SimConfig parse_config(const std::string& text, bool strict, std::vector<std::string>* warnings) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("config: malformed section header at line " +
                                                   std::to_string(lineno));
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));

        const Entry* found = nullptr;
        for (const Entry& e : entries()) {
            if (section == e.section && key == e.key) {
                found = &e;
                break;
            }
        }
        if (!found) {
            const std::string msg = "config: unknown key '" + section + "." + key + "'";
            if (strict) throw ConfigError(msg);
            if (warnings) warnings->push_back(msg);
            continue;
        }
        found->set(cfg, val);
    }
    validate_config(cfg);
    return cfg;
}

SimConfig load_config(const std::string& path, bool strict, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), strict, warnings);
}

std::string save_config(const SimConfig& cfg) {
    std::string out;
    std::string section;
    for (const Entry& e : entries()) {
        if (section != e.section) {
            if (!out.empty()) out += '\n';
            section = e.section;
            out += '[' + section + "]\n";
        }
        out += std::string(e.key) + " = " + e.get(cfg) + '\n';
    }
    return out;
}

void write_config(const SimConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("config: cannot write '" + path + "'");
    out << save_config(cfg);
}

void validate_config(const SimConfig& cfg) {
    check_range(cfg.bandwidth_hz, 1.0, 1e9, "bandwidth_hz");
    check_range(cfg.rx_noise_figure_db, 0.0, 30.0, "rx_noise_figure_db");
    check_range(cfg.snr_requirement_db, 0.0, 60.0, "snr_requirement_db");
    check_range(cfg.soi_power_dbm, -150.0, 0.0, "soi_power_dbm");
    check_range(cfg.antenna_isolation_db, 0.0, 150.0, "antenna_isolation_db");
    check_range(cfg.rf_cancellation_db, 0.0, 100.0, "rf_cancellation_db");
    check_range(cfg.adc_bits, 1, 32, "adc_bits");
    check_range(cfg.adc_full_scale_dbm, -50.0, 50.0, "adc_full_scale_dbm");
    check_range(cfg.papr_backoff_db, 0.0, 30.0, "papr_backoff_db");
    check_range(cfg.pa_gain_db, 0.0, 60.0, "pa_gain_db");
    check_range(cfg.n_tx, 1, 8, "n_tx");
    check_range(cfg.n_rx, 1, 8, "n_rx");

    check_range(cfg.lna.gain_db, -20.0, 60.0, "lna.gain_db");
    check_intercept(cfg.lna.iip2_dbm, "lna.iip2_dbm");
    check_intercept(cfg.lna.iip3_dbm, "lna.iip3_dbm");
    check_range(cfg.lna.nf_db, 0.0, 30.0, "lna.nf_db");
    check_range(cfg.mixer.gain_db, -20.0, 60.0, "mixer.gain_db");
    check_intercept(cfg.mixer.iip2_dbm, "mixer.iip2_dbm");
    check_intercept(cfg.mixer.iip3_dbm, "mixer.iip3_dbm");
    check_range(cfg.mixer.nf_db, 0.0, 30.0, "mixer.nf_db");
    check_range(cfg.vga_gain_min_db, 0.0, 100.0, "vga.gain_min_db");
    check_range(cfg.vga_gain_max_db, cfg.vga_gain_min_db, 100.0, "vga.gain_max_db");
    check_intercept(cfg.vga.iip2_dbm, "vga.iip2_dbm");
    check_intercept(cfg.vga.iip3_dbm, "vga.iip3_dbm");
    check_range(cfg.vga.nf_db, 0.0, 30.0, "vga.nf_db");

    cfg.ofdm.validate();
    check_range(cfg.n_symbols, 1, 100000, "n_symbols");

    check_range(cfg.channel_len, 1, 256, "channel_len");
    if (cfg.observation_len <= cfg.channel_len)
        throw ConfigError("config: key 'observation_len' must exceed channel_len");
    if (cfg.observation_len > cfg.n_symbols * cfg.ofdm.symbol_len())
        throw ConfigError("config: key 'observation_len' exceeds the frame length "
                          "(n_symbols * symbol_len)");
    check_range(cfg.m_true, 1, 256, "m_true");
    check_range(cfg.low_power_offset_db, 0.0, 60.0, "low_power_offset_db");
    check_range(cfg.min_si_above_floor_db, 0.0, 60.0, "min_si_above_floor_db");
    check_range(cfg.si_decay_db_per_tap, 0.0, 30.0, "si_decay_db_per_tap");

    check_range(cfg.digital_canc_below_floor_db, 0.0, 60.0, "digital_canc_below_floor_db");

    if (cfg.tx_stop_dbm < cfg.tx_start_dbm)
        throw ConfigError("config: key 'tx_stop_dbm' must be >= tx_start_dbm");
    check_range(cfg.tx_step_db, 0.01, 30.0, "tx_step_db");
    check_range(cfg.realizations, 1, 100000, "realizations");
}

std::string config_hash(const SimConfig& cfg) {
    const std::string s = save_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RxChainParams to_rx_chain_params(const SimConfig& cfg) {
    RxChainParams p;
    p.lna = cfg.lna;
    p.mixer = cfg.mixer;
    p.vga = cfg.vga;
    p.vga_gain_min_db = cfg.vga_gain_min_db;
    p.vga_gain_max_db = cfg.vga_gain_max_db;
    p.adc_bits = cfg.adc_bits;
    p.adc_full_scale_dbm = cfg.adc_full_scale_dbm;
    p.papr_backoff_db = cfg.papr_backoff_db;
    p.noise_figure_db = cfg.rx_noise_figure_db;
    p.bandwidth_hz = cfg.bandwidth_hz;
    return p;
}

LinkBudgetConfig to_link_budget_config(const SimConfig& cfg) {
    LinkBudgetConfig lb;
    lb.chain = to_rx_chain_params(cfg);
    lb.antenna_isolation_db = cfg.antenna_isolation_db;
    lb.rf_cancellation_db = cfg.rf_cancellation_db;
    lb.n_tx = cfg.n_tx;
    lb.soi_power_dbm = cfg.soi_power_dbm;
    lb.digital_canc_below_floor_db = cfg.digital_canc_below_floor_db;
    lb.tx_start_dbm = cfg.tx_start_dbm;
    lb.tx_stop_dbm = cfg.tx_stop_dbm;
    lb.tx_step_db = cfg.tx_step_db;
    lb.linear_chain = cfg.linear_chain;
    return lb;
}

bool operator==(const SimConfig& a, const SimConfig& b) {
    return save_config(a) == save_config(b);
}

} // namespace fdx
