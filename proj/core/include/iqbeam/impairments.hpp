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

#include <random>
#include <vector>

#include "iqbeam/realcomplex.hpp"

namespace iqbeam {

/// One amplitude/phase mismatch realization for a single I/Q chain.
struct MismatchDraw {
    double g = 1.0;    ///< amplitude ratio, dimensionless
    double phi = 0.0;  ///< phase error, radians
};

enum class ChainKind { TX, RX };

/// Complex coefficient pair (direct, image) of one impaired chain.
/// TX: c1 + c2 == 1 exactly. RX: c1 + conj(c2) == 1 exactly.
struct IqiCoeffPair {
    cplx c1{1.0, 0.0};
    cplx c2{0.0, 0.0};
    ChainKind kind = ChainKind::TX;
};

/// The four statistics constants of the mismatch model: fixed offsets
/// (delta_g, delta_phi) and uniform spreads (cap_g, cap_phi).
struct IqiDelta {
    double delta_g = 0.0;
    double delta_phi = 0.0;
    double cap_g = 0.0;
    double cap_phi = 0.0;

    /// Single-knob variant: all four constants equal.
    static IqiDelta uniform(double d) { return {d, d, d, d}; }

    bool operator==(const IqiDelta&) const = default;
};

/// Realized imbalance coefficients of every chain in one coherence block.
/// Known to both estimator and precoder (slowly-varying hardware state).
struct IqiProfile {
    std::vector<IqiCoeffPair> tx_user;    ///< uplink TX chain, one per user
    std::vector<IqiCoeffPair> rx_source;  ///< one per source antenna
    std::vector<IqiCoeffPair> tx_source;  ///< one per source antenna
    std::vector<IqiCoeffPair> rx_user;    ///< downlink RX chain, one per user
    IqiDelta delta;

    int antennas() const { return static_cast<int>(rx_source.size()); }
    int users() const { return static_cast<int>(rx_user.size()); }
};

/// g = 1 - delta_g (1 + Psi_g), phi = delta_phi (1 + Psi_phi), with
/// Psi_g ~ U[-cap_g/2, cap_g/2] and Psi_phi ~ U[-cap_phi/2, cap_phi/2].
MismatchDraw draw_mismatch(double delta_g, double delta_phi, double cap_g, double cap_phi,
                           std::mt19937_64& rng);

/// TX chain coefficients: c1 = (1 + g e^{j phi})/2, c2 = 1 - c1.
IqiCoeffPair tx_coeffs(const MismatchDraw& m);

/// RX chain coefficients: c1 = (1 + g e^{-j phi})/2, c2 = 1 - conj(c1),
/// i.e. (1 - g e^{j phi})/2.
IqiCoeffPair rx_coeffs(const MismatchDraw& m);

/// Independent draws for every antenna and user chain.
IqiProfile make_profile(int n_antennas, int n_users, const IqiDelta& delta, std::mt19937_64& rng);

/// All chains ideal: every pair is (1, 0).
IqiProfile ideal_profile(int n_antennas, int n_users);

}  // namespace iqbeam
