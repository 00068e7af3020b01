// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/experiment_io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace iqbeam {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const std::set<std::string> kKnownKeys = {
    "antennas",   "users",       "trials",       "seed",        "delta",
    "delta_g",    "delta_phi",   "cap_g",        "cap_phi",     "freq_hz",
    "distance_m", "path_loss_exp", "p_i_dbm",    "p_c_dbm",     "gamma_e_db",
    "sigma1_sq",  "sigma2_sq",   "tau_s",        "tau_c_frac",  "pilot_phase",
    "sweep_axis", "sweep_values", "schemes",     "threads",     "out_dir"};

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    for (const auto& [key, _] : j.items()) {
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }

    ExperimentConfig cfg;
    auto get = [&](const char* key, auto& dst) {
        if (j.contains(key)) {
            try {
                dst = j.at(key).get<std::decay_t<decltype(dst)>>();
            } catch (const json::exception&) {
                throw ConfigError(std::string("config key '") + key + "' has the wrong type");
            }
        }
    };

    get("antennas", cfg.n_antennas);
    get("users", cfg.n_users);
    get("trials", cfg.trials);
    get("seed", cfg.seed);
    get("delta", cfg.delta);
    cfg.iqi_delta = IqiDelta::uniform(cfg.delta);
    if (j.contains("delta_g") || j.contains("delta_phi") || j.contains("cap_g") ||
        j.contains("cap_phi")) {
        cfg.delta_overridden = true;
        get("delta_g", cfg.iqi_delta.delta_g);
        get("delta_phi", cfg.iqi_delta.delta_phi);
        get("cap_g", cfg.iqi_delta.cap_g);
        get("cap_phi", cfg.iqi_delta.cap_phi);
    }
    get("freq_hz", cfg.freq_hz);
    get("distance_m", cfg.distance_m);
    get("path_loss_exp", cfg.path_loss_exp);
    get("p_i_dbm", cfg.p_i_dbm);
    if (j.contains("p_c_dbm")) {
        cfg.p_c_explicit = true;
        get("p_c_dbm", cfg.p_c_dbm);
    }
    get("gamma_e_db", cfg.gamma_e_db);
    get("sigma1_sq", cfg.sigma1_sq);
    get("sigma2_sq", cfg.sigma2_sq);
    get("tau_s", cfg.tau_s);
    get("tau_c_frac", cfg.tau_c_frac);
    get("pilot_phase", cfg.pilot_phase);
    if (j.contains("sweep_axis")) {
        cfg.axis = axis_from_name(j.at("sweep_axis").get<std::string>());
    }
    get("sweep_values", cfg.sweep_values);
    if (j.contains("schemes")) {
        cfg.schemes.clear();
        for (const auto& name : j.at("schemes")) {
            cfg.schemes.push_back(scheme_from_name(name.get<std::string>()));
        }
    }
    get("threads", cfg.threads);
    get("out_dir", cfg.out_dir);

    cfg.check();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const ExperimentConfig& cfg) {
    json j;
    j["antennas"] = cfg.n_antennas;
    j["users"] = cfg.n_users;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["delta"] = cfg.delta;
    if (cfg.delta_overridden) {
        j["delta_g"] = cfg.iqi_delta.delta_g;
        j["delta_phi"] = cfg.iqi_delta.delta_phi;
        j["cap_g"] = cfg.iqi_delta.cap_g;
        j["cap_phi"] = cfg.iqi_delta.cap_phi;
    }
    j["freq_hz"] = cfg.freq_hz;
    j["distance_m"] = cfg.distance_m;
    j["path_loss_exp"] = cfg.path_loss_exp;
    j["p_i_dbm"] = cfg.p_i_dbm;
    if (cfg.p_c_explicit) j["p_c_dbm"] = cfg.p_c_dbm;
    j["gamma_e_db"] = cfg.gamma_e_db;
    j["sigma1_sq"] = cfg.sigma1_sq;
    j["sigma2_sq"] = cfg.sigma2_sq;
    j["tau_s"] = cfg.tau_s;
    j["tau_c_frac"] = cfg.tau_c_frac;
    j["pilot_phase"] = cfg.pilot_phase;
    j["sweep_axis"] = axis_name(cfg.axis);
    j["sweep_values"] = cfg.sweep_values;
    json schemes = json::array();
    for (Scheme s : cfg.schemes) schemes.push_back(scheme_name(s));
    j["schemes"] = schemes;
    j["threads"] = cfg.threads;
    j["out_dir"] = cfg.out_dir;
    return j.dump(2);
}

std::vector<double> parse_range(const std::string& text) {
    double a = 0.0, step = 0.0, b = 0.0;
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    try {
        if (c1 == std::string::npos) {
            return {std::stod(text)};
        }
        if (c2 == std::string::npos) throw ConfigError("");
        a = std::stod(text.substr(0, c1));
        step = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
        b = std::stod(text.substr(c2 + 1));
    } catch (const std::exception&) {
        throw ConfigError("range '" + text + "' must be a number or A:STEP:B");
    }
    if (step <= 0.0 || b < a) throw ConfigError("range '" + text + "' needs STEP > 0 and B >= A");
    std::vector<double> out;
    for (double v = a; v <= b + 1e-9 * step; v += step) out.push_back(v);
    return out;
}

namespace {

struct Row {
    std::string metric;
    double mean;
    double std_err;
};

std::vector<Row> rows_for(const SchemeStats& st) {
    std::vector<Row> rows;
    // dB-scale standard errors by the delta method
    const double ln10_10 = 10.0 / std::log(10.0);
    if (st.nmse_mean > 0.0) {
        rows.push_back({"nmse_db", to_db(st.nmse_mean), ln10_10 * st.nmse_se / st.nmse_mean});
    }
    if (st.power_mean_w > 0.0) {
        rows.push_back(
            {"power_dbm", to_dbm(st.power_mean_w), ln10_10 * st.power_se_w / st.power_mean_w});
        rows.push_back({"eff_power_dbm", to_dbm(st.eff_power_mean_w),
                        ln10_10 * st.power_se_w / st.power_mean_w});
    }
    return rows;
}

}  // namespace

std::string series_to_csv(const MetricSeries& series, const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "sweep_axis,sweep_value,scheme,metric,mean,std_err,trials,singular_trials,seed\n";
    for (const AxisPoint& pt : series.points) {
        for (Scheme s : cfg.schemes) {
            const SchemeStats& st = pt.stats[static_cast<int>(s)];
            for (const Row& r : rows_for(st)) {
                out << axis_name(series.axis) << ',' << fmt17(pt.value) << ',' << scheme_name(s)
                    << ',' << r.metric << ',' << fmt17(r.mean) << ',' << fmt17(r.std_err) << ','
                    << pt.trials_used << ',' << pt.singular_trials << ',' << series.seed << '\n';
            }
        }
    }
    return out.str();
}

std::string gains_to_csv(const GainSummary& gains, const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "sweep_axis,scheme,gain_percent,seed\n";
    for (std::size_t i = 0; i < gains.per_sweep.size(); ++i) {
        for (Scheme s : cfg.schemes) {
            out << axis_name(gains.axes[i]) << ',' << scheme_name(s) << ','
                << fmt17(100.0 * gains.per_sweep[i][static_cast<int>(s)]) << ',' << cfg.seed
                << '\n';
        }
    }
    for (Scheme s : cfg.schemes) {
        out << "overall," << scheme_name(s) << ','
            << fmt17(100.0 * gains.overall[static_cast<int>(s)]) << ',' << cfg.seed << '\n';
    }
    return out.str();
}

std::vector<std::string> write_outputs(const MetricSeries& series, const ExperimentConfig& cfg,
                                       const RunManifest& manifest, const std::string& out_dir,
                                       const std::string& stem) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string csv_path = (fs::path(out_dir) / (stem + ".csv")).string();
    const std::string json_path = (fs::path(out_dir) / (stem + ".json")).string();

    const std::string csv = series_to_csv(series, cfg);
    {
        std::ofstream out(csv_path);
        if (!out) throw ConfigError("cannot write '" + csv_path + "'");
        out << csv;
    }

    json j;
    j["manifest"] = {{"artifact_version", manifest.artifact_version},
                     {"seed", manifest.seed},
                     {"started_at", manifest.started_at},
                     {"finished_at", manifest.finished_at},
                     {"outputs", json::array({csv_path, json_path})}};
    j["config"] = json::parse(config_to_text(cfg));
    json rows = json::array();
    for (const AxisPoint& pt : series.points) {
        for (Scheme s : cfg.schemes) {
            const SchemeStats& st = pt.stats[static_cast<int>(s)];
            for (const Row& r : rows_for(st)) {
                rows.push_back({{"sweep_axis", axis_name(series.axis)},
                                {"sweep_value", pt.value},
                                {"scheme", scheme_name(s)},
                                {"metric", r.metric},
                                {"mean", r.mean},
                                {"std_err", r.std_err},
                                {"trials", pt.trials_used},
                                {"singular_trials", pt.singular_trials},
                                {"seed", series.seed}});
            }
        }
    }
    j["rows"] = rows;
    {
        std::ofstream out(json_path);
        if (!out) throw ConfigError("cannot write '" + json_path + "'");
        out << j.dump(2) << '\n';
    }
    return {csv_path, json_path};
}

std::string current_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace iqbeam
