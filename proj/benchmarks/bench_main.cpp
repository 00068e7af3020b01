// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <benchmark/benchmark.h>

#include "iqbeam/estimators.hpp"
#include "iqbeam/montecarlo.hpp"
#include "iqbeam/precoders.hpp"
#include "iqbeam/rng.hpp"

using namespace iqbeam;

namespace {

struct Scenario {
    IqiProfile prof;
    ChannelRealization ch;
    Pilot pilot;
    UplinkObservation obs;
};

Scenario make_scenario(int n) {
    std::mt19937_64 rng = make_trial_rng(1, static_cast<std::uint64_t>(n));
    Scenario s;
    s.prof = make_profile(n, 1, IqiDelta::uniform(0.4), rng);
    s.ch = draw_channel(n, 6.8e-9, rng);
    s.pilot = Pilot::from_power(1e-3, 1e-4);
    s.obs = observe_uplink(s.ch, s.prof, s.pilot, 1e-17, rng);
    return s;
}

void BM_LseBenchmark(benchmark::State& state) {
    const Scenario s = make_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lse_benchmark(s.obs.y_J, s.pilot));
    }
}

void BM_LseOptimal(benchmark::State& state) {
    const Scenario s = make_scenario(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lse_optimal(build_normal_system(s.obs.y_J, s.pilot, s.prof)));
    }
}

void BM_OptimalPrecoder(benchmark::State& state) {
    const Scenario s = make_scenario(static_cast<int>(state.range(0)));
    const DownlinkCoupling c = downlink_coupling(s.ch.h.transpose(), s.prof, CVec::Ones(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimal_precoder(c, 1.0));
    }
}

void BM_RunTrial(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.n_antennas = static_cast<int>(state.range(0));
    const TrialParams p = trial_params_at(cfg, 30.0);
    std::uint64_t idx = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trial(p, 1, idx++));
    }
}

}  // namespace

BENCHMARK(BM_LseBenchmark)->Arg(4)->Arg(10)->Arg(20);
BENCHMARK(BM_LseOptimal)->Arg(4)->Arg(10)->Arg(20);
BENCHMARK(BM_OptimalPrecoder)->Arg(4)->Arg(10)->Arg(20);
BENCHMARK(BM_RunTrial)->Arg(4)->Arg(10)->Arg(20);

BENCHMARK_MAIN();
