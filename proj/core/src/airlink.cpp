// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/airlink.hpp"

#include <cmath>
#include <numbers>

namespace iqbeam {

std::pair<double, double> path_loss(double f, double d, double rho) {
    if (f <= 0.0 || d <= 0.0) {
        throw ConfigError("path_loss: frequency and distance must be > 0");
    }
    const double lambda_over_4pi = 3e8 / (4.0 * std::numbers::pi * f);
    const double varpi = lambda_over_4pi * lambda_over_4pi;
    return {varpi, varpi / std::pow(d, rho)};
}

Pilot Pilot::from_power(double p_c, double tau_c, double phase) {
    if (p_c <= 0.0 || tau_c <= 0.0) {
        throw ConfigError("Pilot::from_power: pilot power and training time must be > 0");
    }
    Pilot p;
    p.s = std::polar(std::sqrt(p_c * tau_c), phase);
    p.energy = std::norm(p.s);
    return p;
}

ChannelRealization draw_channel(int n, double beta, std::mt19937_64& rng) {
    if (n < 1 || beta < 0.0) {
        throw ConfigError("draw_channel: need n >= 1 and beta >= 0");
    }
    std::normal_distribution<double> gauss(0.0, std::sqrt(beta / 2.0));
    CVec h(n);
    for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        h(i) = cplx(re, im);
    }
    return {std::move(h), beta};
}

CVec draw_noise(int n, double sigma_sq, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(sigma_sq / 2.0));
    CVec v(n);
    for (int i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = cplx(re, im);
    }
    return v;
}

std::pair<CVec, CVec> effective_uplink_channels(const ChannelRealization& ch,
                                                const IqiProfile& prof, int user) {
    const int n = static_cast<int>(ch.h.size());
    if (prof.antennas() != n) {
        throw DimensionMismatch("effective_uplink_channels: profile antenna count mismatch");
    }
    const IqiCoeffPair& t = prof.tx_user.at(user);
    CVec h_a(n), h_b(n);
    for (int i = 0; i < n; ++i) {
        const IqiCoeffPair& r = prof.rx_source[i];
        const cplx hi = ch.h(i);
        h_a(i) = r.c1 * hi * t.c1 + r.c2 * std::conj(hi) * std::conj(t.c2);
        h_b(i) = r.c1 * hi * t.c2 + r.c2 * std::conj(hi) * std::conj(t.c1);
    }
    return {std::move(h_a), std::move(h_b)};
}

UplinkObservation observe_uplink(const ChannelRealization& ch, const IqiProfile& prof,
                                 const Pilot& pilot, const CVec& noise, int user) {
    const int n = static_cast<int>(ch.h.size());
    if (noise.size() != n) {
        throw DimensionMismatch("observe_uplink: noise length mismatch");
    }
    auto [h_a, h_b] = effective_uplink_channels(ch, prof, user);
    UplinkObservation obs;
    obs.n_J.resize(n);
    for (int i = 0; i < n; ++i) {
        const IqiCoeffPair& r = prof.rx_source[i];
        obs.n_J(i) = r.c1 * noise(i) + r.c2 * std::conj(noise(i));
    }
    obs.y_J = h_a * pilot.s + h_b * std::conj(pilot.s) + obs.n_J;
    obs.h_A = std::move(h_a);
    obs.h_B = std::move(h_b);
    return obs;
}

UplinkObservation observe_uplink(const ChannelRealization& ch, const IqiProfile& prof,
                                 const Pilot& pilot, double sigma1_sq, std::mt19937_64& rng,
                                 int user) {
    const CVec n = draw_noise(static_cast<int>(ch.h.size()), sigma1_sq, rng);
    return observe_uplink(ch, prof, pilot, n, user);
}

}  // namespace iqbeam
