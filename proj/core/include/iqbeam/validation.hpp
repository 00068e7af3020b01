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
#include <string>
#include <vector>

namespace iqbeam::validation {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The full identity/invariant battery behind `iqbeam validate`: embedding
/// homomorphism, coefficient identities, signal reconstruction, normal-system
/// identities, zero-noise recovery, stationarity, quadratic-form bridge,
/// eigenpair contract, no-imbalance reductions, and the multiuser reduction.
std::vector<CheckResult> run_all(std::uint64_t seed, double delta = 0.4);

}  // namespace iqbeam::validation
