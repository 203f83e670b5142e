// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the fdx authors

// Command line front end: transmit-power sweeps (`sweep`), the analytic
// component-level budget (`budget`) and verbose single realizations
// (`single`). Results are CSV on stdout or --out; diagnostics go to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fdx/config.hpp"
#include "fdx/harness.hpp"
#include "fdx/link_budget.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

std::vector<fdx::Scenario> parse_scenarios(const std::string& arg) {
    if (arg == "all")
        return {fdx::Scenario::LinearCancellation, fdx::Scenario::NonlinearCancellation,
                fdx::Scenario::LinearChain};
    if (arg.size() == 1) return {fdx::scenario_from_tag(arg[0])};
    throw CLI::ValidationError("--scenario", "expected a, b, c or all");
}

void print_single_report(const fdx::SimConfig& cfg, double tx_power,
                         const std::vector<fdx::Scenario>& scenarios, int realization,
                         const std::string& dump_tx, const std::string& dump_estimates) {
    const fdx::RealizationInputs inputs = fdx::make_realization_inputs(cfg, 0, realization);
    if (!dump_tx.empty()) {
        fdx::export_frame_iq(inputs.frame_payload, dump_tx);
        std::cerr << "payload transmit frames written to " << dump_tx << "\n";
    }

    std::printf("single realization %d at tx power %.2f dBm (rx 0)\n", realization, tx_power);
    std::printf("  ideal SINR with SI disabled: %.3f dB\n\n", fdx::run_ideal_reference(cfg, realization));

    std::string estimates;
    for (fdx::Scenario s : scenarios) {
        const fdx::RealizationOutput out = fdx::run_realization(cfg, inputs, tx_power, s);
        const fdx::ScenarioDiagnostics& d = out.diag;
        std::printf("scenario %c\n", fdx::scenario_tag(s));
        std::printf("  training stage A tx power     %10.2f dBm (VGA %.1f dB)\n",
                    d.low_power_dbm, d.stage_a_vga_db);
        std::printf("  SI at chain input (post RF)   %10.2f dBm\n", d.si_in_dbm);
        std::printf("  payload VGA gain (frozen)     %10.2f dB\n", d.payload_vga_db);
        std::printf("  stage B terms at ADC input:\n");
        std::printf("    linear                      %10.2f dBm\n", d.stage_b_powers.linear_dbm);
        std::printf("    2nd order                   %10.2f dBm\n", d.stage_b_powers.second_order_dbm);
        std::printf("    3rd order                   %10.2f dBm\n", d.stage_b_powers.third_order_dbm);
        std::printf("    higher order                %10.2f dBm\n", d.stage_b_powers.higher_order_dbm);
        std::printf("    thermal noise               %10.2f dBm\n", d.stage_b_powers.noise_dbm);
        std::printf("    quantization                %10.2f dBm\n", d.stage_b_powers.quantization_dbm);
        std::printf("  SOI at detector               %10.2f dBm\n", d.soi_ref_dbm);
        std::printf("  residual interference+noise   %10.2f dBm\n", d.residual_dbm);
        std::printf("  SINR                          %10.3f dB\n\n", out.sinr_db);
        estimates += "scenario ";
        estimates += fdx::scenario_tag(s);
        estimates += "\n" + d.estimate_text + "\n";
    }
    if (!dump_estimates.empty()) {
        std::ofstream out(dump_estimates);
        if (!out) throw std::runtime_error("cannot open '" + dump_estimates + "'");
        out << estimates;
        std::cerr << "estimates written to " << dump_estimates << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"full-duplex transceiver simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    bool strict_config = false;
    app.add_option("--config", config_path, "configuration file (defaults used when absent)");
    app.add_option("--seed", seed, "master seed override");
    app.add_flag("--strict-config", strict_config, "reject unknown configuration keys");

    auto* sweep = app.add_subcommand("sweep", "SINR vs transmit power over seeded realizations");
    std::string sweep_out, sweep_scenarios = "all", per_realization_out;
    std::optional<int> realizations;
    int threads = 0;
    sweep->add_option("--out", sweep_out, "CSV output path (stdout when absent)");
    sweep->add_option("--scenario", sweep_scenarios, "a|b|c|all");
    sweep->add_option("--realizations", realizations, "realizations per power point override");
    sweep->add_option("--threads", threads, "worker threads (0 = hardware)");
    sweep->add_option("--per-realization", per_realization_out, "also dump per-realization SINRs");

    auto* budget = app.add_subcommand("budget", "analytic component power levels vs transmit power");
    std::string budget_out;
    budget->add_option("--out", budget_out, "CSV output path (stdout when absent)");

    auto* single = app.add_subcommand("single", "one realization with verbose per-stage power dump");
    double tx_power = 10.0;
    int realization = 0;
    std::string single_scenarios = "all", dump_tx, dump_estimates;
    single->add_option("--tx-power", tx_power, "transmit power per antenna in dBm");
    single->add_option("--scenario", single_scenarios, "a|b|c|all");
    single->add_option("--realization", realization, "realization index (seed substream)");
    single->add_option("--dump-tx", dump_tx, "write payload frames as float32 I/Q");
    single->add_option("--dump-estimates", dump_estimates, "write channel/coefficient estimates");

    CLI11_PARSE(app, argc, argv);

    try {
        fdx::SimConfig cfg;
        if (!config_path.empty()) {
            std::vector<std::string> warnings;
            cfg = fdx::load_config(config_path, strict_config, &warnings);
            for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
        }
        if (seed) cfg.master_seed = *seed;
        if (realizations) cfg.realizations = *realizations;

        if (sweep->parsed()) {
            const fdx::SweepResult result =
                fdx::run_sweep(cfg, parse_scenarios(sweep_scenarios), threads);
            write_output(fdx::sweep_result_csv(result), sweep_out);
            if (!per_realization_out.empty())
                write_output(fdx::sweep_realizations_csv(result), per_realization_out);
        } else if (budget->parsed()) {
            const fdx::LinkBudgetReport report =
                fdx::component_power_sweep(fdx::to_link_budget_config(cfg));
            write_output(fdx::budget_report_csv(report), budget_out);
        } else if (single->parsed()) {
            print_single_report(cfg, tx_power, parse_scenarios(single_scenarios), realization,
                                dump_tx, dump_estimates);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
