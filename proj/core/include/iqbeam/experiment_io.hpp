// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <vector>

#include "iqbeam/montecarlo.hpp"

namespace iqbeam {

/// Provenance record emitted next to every result file.
struct RunManifest {
    std::string artifact_version;
    std::uint64_t seed = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> output_paths;
};

/// Flat-key JSON config. Unknown keys and out-of-range values raise
/// ConfigError naming the key. Omitted keys keep their defaults.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical serialization; parse_config_text(config_to_text(cfg)) == cfg.
std::string config_to_text(const ExperimentConfig& cfg);

/// "A:STEP:B" inclusive range expansion, e.g. "0:10:40" -> {0,10,20,30,40}.
std::vector<double> parse_range(const std::string& text);

/// Writes <stem>.csv and <stem>.json under out_dir and returns both paths.
/// CSV columns: sweep_axis, sweep_value, scheme, metric, mean, std_err,
/// trials, singular_trials, seed. Metrics: nmse_db, power_dbm, eff_power_dbm.
/// Floats carry 17 significant digits. The JSON mirrors the rows and embeds
/// the manifest and config echo.
std::vector<std::string> write_outputs(const MetricSeries& series, const ExperimentConfig& cfg,
                                       const RunManifest& manifest, const std::string& out_dir,
                                       const std::string& stem);

/// CSV rows as the text that write_outputs emits (header included).
std::string series_to_csv(const MetricSeries& series, const ExperimentConfig& cfg);

std::string gains_to_csv(const GainSummary& gains, const ExperimentConfig& cfg);

std::string current_timestamp();

}  // namespace iqbeam
