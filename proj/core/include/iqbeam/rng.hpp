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

#include <cstdint>
#include <random>

namespace iqbeam {

/// splitmix64 step; used to derive independent per-trial stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Per-trial random stream derived from (master_seed, trial_index). Streams
/// for distinct indices are statistically independent; the mapping is a pure
/// function, so trials can run on any worker in any order.
inline std::mt19937_64 make_trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
    std::uint64_t state = master_seed;
    std::uint64_t a = splitmix64(state);
    state ^= trial_index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL;
    std::uint64_t b = splitmix64(state);
    std::uint64_t c = splitmix64(state);
    std::uint64_t d = splitmix64(state);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                      static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace iqbeam
