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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "iqbeam/airlink.hpp"
#include "iqbeam/impairments.hpp"

namespace iqbeam {

enum class Scheme : int { Benchmark = 0, OptLse = 1, OptPrecoder = 2, Joint = 3 };
inline constexpr int kNumSchemes = 4;
inline constexpr std::array<Scheme, kNumSchemes> kAllSchemes = {
    Scheme::Benchmark, Scheme::OptLse, Scheme::OptPrecoder, Scheme::Joint};

const std::string& scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

enum class SweepAxis { Snr, Antennas, CeTime, Iqi };

const std::string& axis_name(SweepAxis a);
SweepAxis axis_from_name(const std::string& name);

/// Full experiment description. Defaults reproduce the reference deployment:
/// N = 10 antennas, 915 MHz, 100 m, path-loss exponent 2.5, 10 ms coherence
/// blocks with 1% training, 30 dBm transmit power, 1e-17 J noise energies,
/// mismatch constant 0.4.
struct ExperimentConfig {
    int n_antennas = 10;
    int n_users = 1;
    long trials = 10000;
    std::uint64_t seed = 1;

    double delta = 0.4;          ///< single knob for all four mismatch constants
    bool delta_overridden = false;
    IqiDelta iqi_delta = IqiDelta::uniform(0.4);

    double freq_hz = 915e6;
    double distance_m = 100.0;
    double path_loss_exp = 2.5;
    double p_i_dbm = 30.0;
    double sigma1_sq = 1e-17;
    double sigma2_sq = 1e-17;
    double tau_s = 10e-3;
    double tau_c_frac = 0.01;
    double pilot_phase = 0.0;

    /// Training-SNR operating point used to derive the pilot power at the
    /// default training time. An explicit p_c_dbm takes precedence.
    double gamma_e_db = 30.0;
    bool p_c_explicit = false;
    double p_c_dbm = -30.0;

    SweepAxis axis = SweepAxis::Snr;
    std::vector<double> sweep_values;  ///< empty: per-axis default grid

    std::vector<Scheme> schemes = {Scheme::Benchmark, Scheme::OptLse, Scheme::OptPrecoder,
                                   Scheme::Joint};

    int threads = 0;  ///< 0 = all cores (IQBEAM_THREADS env caps this)
    std::string out_dir = "out";

    /// Throws ConfigError naming the offending key when out of range.
    void check() const;

    /// Link budget at the config's defaults (before any sweep override).
    LinkBudget link() const;

    /// Default sweep grid for the configured axis.
    std::vector<double> effective_sweep_values() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Everything one trial needs; a pure value so trials are data-parallel.
struct TrialParams {
    int n = 10;
    int k = 1;
    IqiDelta delta;
    double beta = 0.0;
    double sigma1_sq = 0.0;
    double sigma2_sq = 0.0;
    double pilot_power = 0.0;
    double tau_c = 0.0;
    double pilot_phase = 0.0;
    double p_i_w = 1.0;
    bool noiseless = false;  ///< diagnostic variant: zero training noise
};

struct TrialOutcome {
    double nmse_benchmark = 0.0;  ///< ||h_hat_A - h||^2 / (N beta)
    double nmse_optimal = 0.0;    ///< ||h_hat - h||^2 / (N beta)
    std::array<double, kNumSchemes> power_w{};  ///< true-channel signal power per scheme
    bool singular = false;
};

/// Per-scheme aggregates at one sweep point (linear units; conversion to
/// dB/dBm happens at the reporting boundary).
struct SchemeStats {
    double nmse_mean = 0.0;
    double nmse_se = 0.0;
    double power_mean_w = 0.0;
    double power_se_w = 0.0;
    double eff_power_mean_w = 0.0;  ///< (1 - tau_c/tau) weighted
    double gain_vs_benchmark = 0.0;  ///< (P - P_bench) / P_bench
};

struct AxisPoint {
    double value = 0.0;
    long trials_used = 0;
    long singular_trials = 0;
    std::array<SchemeStats, kNumSchemes> stats{};
};

struct MetricSeries {
    SweepAxis axis = SweepAxis::Snr;
    std::uint64_t seed = 0;
    std::vector<AxisPoint> points;
};

/// One full trial: draw profile and channel, observe the training signal, run
/// both estimators, build all four precoders, and score them on the true
/// channel. All schemes share the trial's draws (common random numbers).
/// Deterministic in (master_seed, trial_index, params).
TrialOutcome run_trial(const TrialParams& p, std::uint64_t master_seed, std::uint64_t trial_index);

/// Sweep the configured axis, fanning trials across workers; the reduction is
/// in trial-index order so results are byte-stable for a fixed seed.
MetricSeries run_sweep(const ExperimentConfig& cfg);

/// Trial parameters at one sweep point (exposed for verification re-runs).
TrialParams trial_params_at(const ExperimentConfig& cfg, double axis_value);

struct GainSummary {
    /// Rows follow the sweep order passed in; per-scheme mean linear-power
    /// gain over benchmark, averaged across the sweep's axis points.
    std::vector<std::array<double, kNumSchemes>> per_sweep;
    std::vector<SweepAxis> axes;
    std::array<double, kNumSchemes> overall{};  ///< averaged across sweeps
};

GainSummary gain_summary(const std::vector<MetricSeries>& series);

double to_db(double x);
double to_dbm(double p_w);
double dbm_to_w(double dbm);

}  // namespace iqbeam
