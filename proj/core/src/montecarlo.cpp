// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "iqbeam/estimators.hpp"
#include "iqbeam/precoders.hpp"
#include "iqbeam/rng.hpp"

namespace iqbeam {

namespace {
const std::array<std::string, kNumSchemes> kSchemeNames = {"benchmark", "opt_lse", "opt_precoder",
                                                           "joint"};
const std::array<std::string, 4> kAxisNames = {"snr", "antennas", "ce_time", "iqi"};
}  // namespace

const std::string& scheme_name(Scheme s) { return kSchemeNames[static_cast<int>(s)]; }

Scheme scheme_from_name(const std::string& name) {
    for (int i = 0; i < kNumSchemes; ++i) {
        if (kSchemeNames[i] == name) return static_cast<Scheme>(i);
    }
    throw ConfigError("unknown scheme '" + name +
                      "' (valid: benchmark, opt_lse, opt_precoder, joint)");
}

const std::string& axis_name(SweepAxis a) { return kAxisNames[static_cast<int>(a)]; }

SweepAxis axis_from_name(const std::string& name) {
    for (int i = 0; i < 4; ++i) {
        if (kAxisNames[i] == name) return static_cast<SweepAxis>(i);
    }
    throw ConfigError("unknown sweep_axis '" + name + "' (valid: snr, antennas, ce_time, iqi)");
}

double to_db(double x) {
    if (x <= 0.0) throw std::domain_error("to_db: input must be > 0");
    return 10.0 * std::log10(x);
}

double to_dbm(double p_w) {
    if (p_w <= 0.0) throw std::domain_error("to_dbm: input must be > 0");
    return 10.0 * std::log10(p_w / 1e-3);
}

double dbm_to_w(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

void ExperimentConfig::check() const {
    if (n_antennas < 1) throw ConfigError("antennas: must be >= 1");
    if (n_users < 1) throw ConfigError("users: must be >= 1");
    if (trials < 1) throw ConfigError("trials: must be >= 1");
    if (delta < 0.0 || delta > 0.5) throw ConfigError("delta: must be in [0, 0.5]");
    if (freq_hz <= 0.0) throw ConfigError("freq_hz: must be > 0");
    if (distance_m <= 0.0) throw ConfigError("distance_m: must be > 0");
    if (sigma1_sq <= 0.0) throw ConfigError("sigma1_sq: must be > 0");
    if (sigma2_sq <= 0.0) throw ConfigError("sigma2_sq: must be > 0");
    if (tau_s <= 0.0) throw ConfigError("tau_s: must be > 0");
    if (tau_c_frac <= 0.0 || tau_c_frac > 1.0) {
        throw ConfigError("tau_c_frac: must be in (0, 1] (training cannot exceed the block)");
    }
    if (threads < 0) throw ConfigError("threads: must be >= 0");
    if (schemes.empty()) throw ConfigError("schemes: at least one scheme required");
    for (double v : sweep_values) {
        switch (axis) {
            case SweepAxis::Antennas:
                if (v < 1.0 || v != std::floor(v)) {
                    throw ConfigError("sweep_values: antenna counts must be integers >= 1");
                }
                break;
            case SweepAxis::CeTime:
                if (v <= 0.0 || v > 1.0) {
                    throw ConfigError("sweep_values: tau_c/tau must be in (0, 1]");
                }
                break;
            case SweepAxis::Iqi:
                if (v < 0.0 || v > 0.5) {
                    throw ConfigError("sweep_values: delta must be in [0, 0.5]");
                }
                break;
            case SweepAxis::Snr:
                break;
        }
    }
}

LinkBudget ExperimentConfig::link() const {
    LinkBudget lb;
    lb.f = freq_hz;
    lb.d = distance_m;
    lb.rho = path_loss_exp;
    std::tie(lb.varpi, lb.beta) = path_loss(lb.f, lb.d, lb.rho);
    lb.sigma1_sq = sigma1_sq;
    lb.sigma2_sq = sigma2_sq;
    lb.p_i = dbm_to_w(p_i_dbm);
    lb.tau = tau_s;
    lb.tau_c = tau_c_frac * tau_s;
    if (p_c_explicit) {
        lb.p_c = dbm_to_w(p_c_dbm);
    } else {
        // operate at the requested training SNR for the default training time
        const double gamma = std::pow(10.0, gamma_e_db / 10.0);
        lb.p_c = gamma * sigma1_sq / (lb.beta * lb.tau_c);
    }
    return lb;
}

std::vector<double> ExperimentConfig::effective_sweep_values() const {
    if (!sweep_values.empty()) return sweep_values;
    switch (axis) {
        case SweepAxis::Snr:
            return {0.0, 10.0, 20.0, 30.0, 40.0};
        case SweepAxis::Antennas:
            return {4.0, 8.0, 12.0, 16.0, 20.0};
        case SweepAxis::CeTime:
            return {1e-4, 3.162e-4, 1e-3, 3.162e-3, 1e-2, 3.162e-2, 1e-1};
        case SweepAxis::Iqi:
            return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
    }
    return {};
}

TrialParams trial_params_at(const ExperimentConfig& cfg, double axis_value) {
    const LinkBudget lb = cfg.link();
    TrialParams p;
    p.n = cfg.n_antennas;
    p.k = cfg.n_users;
    p.delta = cfg.delta_overridden ? cfg.iqi_delta : IqiDelta::uniform(cfg.delta);
    p.beta = lb.beta;
    p.sigma1_sq = lb.sigma1_sq;
    p.sigma2_sq = lb.sigma2_sq;
    p.pilot_power = lb.p_c;
    p.tau_c = lb.tau_c;
    p.pilot_phase = cfg.pilot_phase;
    p.p_i_w = lb.p_i;
    switch (cfg.axis) {
        case SweepAxis::Snr: {
            const double gamma = std::pow(10.0, axis_value / 10.0);
            p.pilot_power = gamma * lb.sigma1_sq / (lb.beta * lb.tau_c);
            break;
        }
        case SweepAxis::Antennas:
            p.n = static_cast<int>(axis_value);
            break;
        case SweepAxis::CeTime:
            // pilot power fixed; training energy scales with tau_c
            p.tau_c = axis_value * cfg.tau_s;
            break;
        case SweepAxis::Iqi:
            p.delta = IqiDelta::uniform(axis_value);
            break;
    }
    return p;
}

TrialOutcome run_trial(const TrialParams& p, std::uint64_t master_seed,
                       std::uint64_t trial_index) {
    if (p.k != 1) {
        throw ConfigError(
            "users: Monte Carlo sweeps support a single user (the conjugate-matched benchmark "
            "has no multiuser counterpart); the multiuser precoder remains available via the "
            "library API");
    }
    std::mt19937_64 rng = make_trial_rng(master_seed, trial_index);

    const IqiProfile prof = make_profile(p.n, p.k, p.delta, rng);
    const ChannelRealization ch = draw_channel(p.n, p.beta, rng);
    const CVec noise = p.noiseless ? CVec(CVec::Zero(p.n)) : draw_noise(p.n, p.sigma1_sq, rng);
    const Pilot pilot = Pilot::from_power(p.pilot_power, p.tau_c, p.pilot_phase);
    const UplinkObservation obs = observe_uplink(ch, prof, pilot, noise);

    TrialOutcome out;
    const ChannelEstimate est_bench = lse_benchmark(obs.y_J, pilot);

    ChannelEstimate est_opt;
    try {
        est_opt = lse_optimal(build_normal_system(obs.y_J, pilot, prof));
    } catch (const SingularAntenna&) {
        out.singular = true;
        return out;
    }

    const double nbeta = static_cast<double>(p.n) * p.beta;
    out.nmse_benchmark = (est_bench.h_hat - ch.h).squaredNorm() / nbeta;
    out.nmse_optimal = (est_opt.h_hat - ch.h).squaredNorm() / nbeta;

    const CVec symbols = CVec::Ones(1);
    const CMat h_true = ch.h.transpose();
    auto coupling_from = [&](const ChannelEstimate& est) {
        return downlink_coupling(est.h_hat.transpose(), prof, symbols, p.sigma2_sq);
    };

    const PrecoderVec x_bench = mrt(est_bench, p.p_i_w);
    const PrecoderVec x_opt_lse = mrt(est_opt, p.p_i_w);
    const PrecoderVec x_opt_prec = optimal_precoder(coupling_from(est_bench), p.p_i_w).first;
    const PrecoderVec x_joint = optimal_precoder(coupling_from(est_opt), p.p_i_w).first;

    out.power_w[static_cast<int>(Scheme::Benchmark)] =
        received_signal_power(h_true, prof, x_bench, symbols);
    out.power_w[static_cast<int>(Scheme::OptLse)] =
        received_signal_power(h_true, prof, x_opt_lse, symbols);
    out.power_w[static_cast<int>(Scheme::OptPrecoder)] =
        received_signal_power(h_true, prof, x_opt_prec, symbols);
    out.power_w[static_cast<int>(Scheme::Joint)] =
        received_signal_power(h_true, prof, x_joint, symbols);
    return out;
}

namespace {

int resolve_threads(int requested) {
    int n = requested;
    if (const char* env = std::getenv("IQBEAM_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = (n > 0) ? std::min(n, cap) : cap;
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    return std::max(1, n);
}

AxisPoint aggregate(double axis_value, const std::vector<TrialOutcome>& outcomes, double tau_c,
                    double tau) {
    AxisPoint pt;
    pt.value = axis_value;
    const double eff = 1.0 - tau_c / tau;

    std::array<double, kNumSchemes> p_sum{}, p_sq{};
    double nmse_b_sum = 0.0, nmse_b_sq = 0.0, nmse_o_sum = 0.0, nmse_o_sq = 0.0;
    for (const TrialOutcome& t : outcomes) {
        if (t.singular) {
            ++pt.singular_trials;
            continue;
        }
        ++pt.trials_used;
        nmse_b_sum += t.nmse_benchmark;
        nmse_b_sq += t.nmse_benchmark * t.nmse_benchmark;
        nmse_o_sum += t.nmse_optimal;
        nmse_o_sq += t.nmse_optimal * t.nmse_optimal;
        for (int s = 0; s < kNumSchemes; ++s) {
            p_sum[s] += t.power_w[s];
            p_sq[s] += t.power_w[s] * t.power_w[s];
        }
    }
    const double n = static_cast<double>(std::max<long>(1, pt.trials_used));
    auto se = [&](double sum, double sq) {
        const double mean = sum / n;
        const double var = std::max(0.0, sq / n - mean * mean);
        return std::sqrt(var / n);
    };
    for (int s = 0; s < kNumSchemes; ++s) {
        SchemeStats& st = pt.stats[s];
        const bool optimal_est = (s == static_cast<int>(Scheme::OptLse)) ||
                                 (s == static_cast<int>(Scheme::Joint));
        st.nmse_mean = (optimal_est ? nmse_o_sum : nmse_b_sum) / n;
        st.nmse_se = optimal_est ? se(nmse_o_sum, nmse_o_sq) : se(nmse_b_sum, nmse_b_sq);
        st.power_mean_w = p_sum[s] / n;
        st.power_se_w = se(p_sum[s], p_sq[s]);
        st.eff_power_mean_w = eff * st.power_mean_w;
    }
    const double p_bench = pt.stats[static_cast<int>(Scheme::Benchmark)].power_mean_w;
    for (int s = 0; s < kNumSchemes; ++s) {
        pt.stats[s].gain_vs_benchmark =
            p_bench > 0.0 ? (pt.stats[s].power_mean_w - p_bench) / p_bench : 0.0;
    }
    return pt;
}

}  // namespace

MetricSeries run_sweep(const ExperimentConfig& cfg) {
    cfg.check();
    MetricSeries series;
    series.axis = cfg.axis;
    series.seed = cfg.seed;

    const std::vector<double> values = cfg.effective_sweep_values();
    const int n_threads = resolve_threads(cfg.threads);

    for (double value : values) {
        const TrialParams params = trial_params_at(cfg, value);
        std::vector<TrialOutcome> outcomes(cfg.trials);
        std::atomic<long> next{0};
        auto worker = [&] {
            for (;;) {
                const long i = next.fetch_add(64);
                if (i >= cfg.trials) break;
                const long end = std::min<long>(i + 64, cfg.trials);
                for (long t = i; t < end; ++t) {
                    outcomes[t] = run_trial(params, cfg.seed, static_cast<std::uint64_t>(t));
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < n_threads; ++w) pool.emplace_back(worker);
        worker();
        for (std::thread& th : pool) th.join();

        series.points.push_back(aggregate(value, outcomes, params.tau_c, cfg.tau_s));
    }
    return series;
}

GainSummary gain_summary(const std::vector<MetricSeries>& series) {
    if (series.empty()) throw ConfigError("gain_summary: no sweeps given");
    GainSummary gs;
    for (const MetricSeries& s : series) {
        if (s.points.empty()) throw ConfigError("gain_summary: sweep has no points");
        std::array<double, kNumSchemes> mean{};
        for (const AxisPoint& pt : s.points) {
            for (int k = 0; k < kNumSchemes; ++k) mean[k] += pt.stats[k].gain_vs_benchmark;
        }
        for (int k = 0; k < kNumSchemes; ++k) mean[k] /= static_cast<double>(s.points.size());
        gs.per_sweep.push_back(mean);
        gs.axes.push_back(s.axis);
        for (int k = 0; k < kNumSchemes; ++k) gs.overall[k] += mean[k];
    }
    for (int k = 0; k < kNumSchemes; ++k) {
        gs.overall[k] /= static_cast<double>(gs.per_sweep.size());
    }
    return gs;
}

}  // namespace iqbeam
