// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iqbeam/experiment_io.hpp"
#include "iqbeam/montecarlo.hpp"
#include "iqbeam/validation.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonFlags {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<long> trials;
    std::optional<double> delta;
    std::optional<int> antennas;
    std::optional<int> users;
    std::optional<std::string> snr_range;
    std::optional<std::string> out_dir;
    std::optional<int> threads;
    bool verify = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file (flags override it)");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per sweep point");
    cmd->add_option("--delta", f.delta, "mismatch constant, all four knobs");
    cmd->add_option("--antennas", f.antennas, "source antenna count N");
    cmd->add_option("--users", f.users, "user count K");
    cmd->add_option("--snr-db", f.snr_range, "training SNR grid A:STEP:B in dB");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--threads", f.threads, "worker cap (0 = all cores)");
    cmd->add_flag("--verify", f.verify, "re-run one sampled sweep point and diff the results");
}

iqbeam::ExperimentConfig build_config(const CommonFlags& f, iqbeam::SweepAxis axis) {
    iqbeam::ExperimentConfig cfg;
    if (f.config_path) cfg = iqbeam::parse_config_file(*f.config_path);
    cfg.axis = axis;
    if (f.seed) cfg.seed = *f.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.delta) {
        cfg.delta = *f.delta;
        cfg.delta_overridden = false;
        cfg.iqi_delta = iqbeam::IqiDelta::uniform(*f.delta);
    }
    if (f.antennas) cfg.n_antennas = *f.antennas;
    if (f.users) cfg.n_users = *f.users;
    if (f.snr_range && axis == iqbeam::SweepAxis::Snr) {
        cfg.sweep_values = iqbeam::parse_range(*f.snr_range);
    }
    if (f.out_dir) cfg.out_dir = *f.out_dir;
    if (f.threads) cfg.threads = *f.threads;
    cfg.check();
    return cfg;
}

bool verify_point(const iqbeam::ExperimentConfig& cfg, const iqbeam::MetricSeries& series) {
    // deterministic spot check: recompute the middle axis point from scratch
    const std::size_t idx = series.points.size() / 2;
    iqbeam::ExperimentConfig one = cfg;
    one.sweep_values = {series.points[idx].value};
    const iqbeam::MetricSeries redo = iqbeam::run_sweep(one);
    const std::string a = iqbeam::series_to_csv(redo, cfg);
    iqbeam::MetricSeries sliced = series;
    sliced.points = {series.points[idx]};
    const std::string b = iqbeam::series_to_csv(sliced, cfg);
    if (a != b) {
        std::cerr << "verify: re-run of sweep point " << series.points[idx].value
                  << " does not match\n";
        return false;
    }
    std::cout << "verify: sweep point " << series.points[idx].value << " reproduced exactly\n";
    return true;
}

int run_one_sweep(const CommonFlags& f, iqbeam::SweepAxis axis) {
    const iqbeam::ExperimentConfig cfg = build_config(f, axis);
    iqbeam::RunManifest man;
    man.artifact_version = kVersion;
    man.seed = cfg.seed;
    man.started_at = iqbeam::current_timestamp();

    const iqbeam::MetricSeries series = iqbeam::run_sweep(cfg);
    man.finished_at = iqbeam::current_timestamp();

    const std::string stem = "sweep_" + iqbeam::axis_name(axis);
    const auto paths = iqbeam::write_outputs(series, cfg, man, cfg.out_dir, stem);
    for (const auto& p : paths) std::cout << "wrote " << p << '\n';

    for (const auto& pt : series.points) {
        std::cout << iqbeam::axis_name(axis) << " = " << pt.value << ":";
        for (iqbeam::Scheme s : cfg.schemes) {
            const auto& st = pt.stats[static_cast<int>(s)];
            std::cout << "  " << iqbeam::scheme_name(s) << " "
                      << iqbeam::to_dbm(st.power_mean_w) << " dBm";
        }
        std::cout << '\n';
    }
    if (f.verify && !verify_point(cfg, series)) return 1;
    return 0;
}

int run_gains(const CommonFlags& f) {
    std::vector<iqbeam::MetricSeries> all;
    iqbeam::ExperimentConfig cfg;
    for (iqbeam::SweepAxis axis :
         {iqbeam::SweepAxis::Snr, iqbeam::SweepAxis::Antennas, iqbeam::SweepAxis::CeTime,
          iqbeam::SweepAxis::Iqi}) {
        cfg = build_config(f, axis);
        iqbeam::RunManifest man;
        man.artifact_version = kVersion;
        man.seed = cfg.seed;
        man.started_at = iqbeam::current_timestamp();
        const iqbeam::MetricSeries series = iqbeam::run_sweep(cfg);
        man.finished_at = iqbeam::current_timestamp();
        iqbeam::write_outputs(series, cfg, man, cfg.out_dir,
                              "sweep_" + iqbeam::axis_name(axis));
        all.push_back(series);
    }
    const iqbeam::GainSummary gains = iqbeam::gain_summary(all);

    namespace fs = std::filesystem;
    const std::string path = (fs::path(cfg.out_dir) / "gains_summary.csv").string();
    {
        std::ofstream out(path);
        out << iqbeam::gains_to_csv(gains, cfg);
    }
    std::cout << "wrote " << path << '\n';
    for (std::size_t i = 0; i < gains.per_sweep.size(); ++i) {
        std::cout << "sweep " << iqbeam::axis_name(gains.axes[i]) << ":";
        for (iqbeam::Scheme s : cfg.schemes) {
            std::cout << "  " << iqbeam::scheme_name(s) << " "
                      << 100.0 * gains.per_sweep[i][static_cast<int>(s)] << "%";
        }
        std::cout << '\n';
    }
    std::cout << "overall:";
    for (iqbeam::Scheme s : cfg.schemes) {
        std::cout << "  " << iqbeam::scheme_name(s) << " "
                  << 100.0 * gains.overall[static_cast<int>(s)] << "%";
    }
    std::cout << '\n';
    return 0;
}

int run_validate(const CommonFlags& f) {
    const std::uint64_t seed = f.seed.value_or(1);
    const double delta = f.delta.value_or(0.4);
    int failures = 0;
    for (const auto& r : iqbeam::validation::run_all(seed, delta)) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
        if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
        std::cout << '\n';
        if (!r.pass) ++failures;
    }
    std::cout << (failures == 0 ? "validation OK" : "validation FAILED") << '\n';
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"iqbeam: channel estimation and energy beamforming under IQ imbalance"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonFlags flags;
    std::vector<std::pair<CLI::App*, iqbeam::SweepAxis>> sweeps = {
        {app.add_subcommand("sweep-snr", "mean power and estimation error vs training SNR"),
         iqbeam::SweepAxis::Snr},
        {app.add_subcommand("sweep-antennas", "mean power vs array size"),
         iqbeam::SweepAxis::Antennas},
        {app.add_subcommand("sweep-ce-time", "effective power vs training-time fraction"),
         iqbeam::SweepAxis::CeTime},
        {app.add_subcommand("sweep-iqi", "mean power vs mismatch severity"),
         iqbeam::SweepAxis::Iqi}};
    for (auto& [cmd, axis] : sweeps) add_common(cmd, flags);
    CLI::App* gains = app.add_subcommand("gains-summary", "per-sweep and overall gains");
    add_common(gains, flags);
    CLI::App* validate =
        app.add_subcommand("validate", "run the invariant and reduction suite");
    add_common(validate, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto& [cmd, axis] : sweeps) {
            if (cmd->parsed()) return run_one_sweep(flags, axis);
        }
        if (gains->parsed()) return run_gains(flags);
        if (validate->parsed()) return run_validate(flags);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
