// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/impairments.hpp"

#include <cmath>

#include "iqbeam/errors.hpp"

namespace iqbeam {

MismatchDraw draw_mismatch(double delta_g, double delta_phi, double cap_g, double cap_phi,
                           std::mt19937_64& rng) {
    if (delta_g < 0.0 || delta_g >= 1.0) {
        throw ConfigError("draw_mismatch: delta_g must be in [0, 1)");
    }
    if (cap_g < 0.0 || cap_phi < 0.0) {
        throw ConfigError("draw_mismatch: cap_g and cap_phi must be >= 0");
    }
    std::uniform_real_distribution<double> ug(-0.5 * cap_g, 0.5 * cap_g);
    std::uniform_real_distribution<double> up(-0.5 * cap_phi, 0.5 * cap_phi);
    const double psi_g = cap_g > 0.0 ? ug(rng) : 0.0;
    const double psi_phi = cap_phi > 0.0 ? up(rng) : 0.0;
    return {1.0 - delta_g * (1.0 + psi_g), delta_phi * (1.0 + psi_phi)};
}

IqiCoeffPair tx_coeffs(const MismatchDraw& m) {
    const cplx c1 = 0.5 * (1.0 + m.g * std::polar(1.0, m.phi));
    // c2 as the exact complement keeps c1 + c2 == 1 in floating point
    const cplx c2 = cplx(1.0 - c1.real(), -c1.imag());
    return {c1, c2, ChainKind::TX};
}

IqiCoeffPair rx_coeffs(const MismatchDraw& m) {
    const cplx c1 = 0.5 * (1.0 + m.g * std::polar(1.0, -m.phi));
    // (1 - g e^{j phi})/2 == conj(1 - c1), so c1 + conj(c2) == 1 exactly
    const cplx c2 = cplx(1.0 - c1.real(), c1.imag());
    return {c1, c2, ChainKind::RX};
}

IqiProfile make_profile(int n_antennas, int n_users, const IqiDelta& delta, std::mt19937_64& rng) {
    if (n_antennas < 1 || n_users < 1) {
        throw ConfigError("make_profile: need n_antennas >= 1 and n_users >= 1");
    }
    IqiProfile prof;
    prof.delta = delta;
    auto draw = [&] { return draw_mismatch(delta.delta_g, delta.delta_phi, delta.cap_g,
                                           delta.cap_phi, rng); };
    prof.tx_user.reserve(n_users);
    prof.rx_user.reserve(n_users);
    for (int k = 0; k < n_users; ++k) {
        prof.tx_user.push_back(tx_coeffs(draw()));
        prof.rx_user.push_back(rx_coeffs(draw()));
    }
    prof.rx_source.reserve(n_antennas);
    prof.tx_source.reserve(n_antennas);
    for (int i = 0; i < n_antennas; ++i) {
        prof.rx_source.push_back(rx_coeffs(draw()));
        prof.tx_source.push_back(tx_coeffs(draw()));
    }
    return prof;
}

IqiProfile ideal_profile(int n_antennas, int n_users) {
    if (n_antennas < 1 || n_users < 1) {
        throw ConfigError("ideal_profile: need n_antennas >= 1 and n_users >= 1");
    }
    IqiProfile prof;
    prof.delta = IqiDelta::uniform(0.0);
    prof.tx_user.assign(n_users, IqiCoeffPair{1.0, 0.0, ChainKind::TX});
    prof.rx_user.assign(n_users, IqiCoeffPair{1.0, 0.0, ChainKind::RX});
    prof.rx_source.assign(n_antennas, IqiCoeffPair{1.0, 0.0, ChainKind::RX});
    prof.tx_source.assign(n_antennas, IqiCoeffPair{1.0, 0.0, ChainKind::TX});
    return prof;
}

}  // namespace iqbeam
