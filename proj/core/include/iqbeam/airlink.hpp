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
#include <utility>

#include "iqbeam/impairments.hpp"
#include "iqbeam/realcomplex.hpp"

namespace iqbeam {

/// Large-scale link parameters for one simulated deployment.
struct LinkBudget {
    double f = 915e6;        ///< carrier frequency, Hz
    double d = 100.0;        ///< source-user distance, m
    double rho = 2.5;        ///< path-loss exponent
    double varpi = 0.0;      ///< unit-distance attenuation
    double beta = 0.0;       ///< average channel power gain, varpi / d^rho
    double sigma1_sq = 1e-17;  ///< uplink noise energy, J
    double sigma2_sq = 1e-17;  ///< downlink noise energy, J
    double p_c = 1e-6;       ///< pilot power, W
    double p_i = 1.0;        ///< transmit power, W
    double tau = 10e-3;      ///< coherence time, s
    double tau_c = 1e-4;     ///< training time, s

    /// Average received training SNR per antenna, beta p_c tau_c / sigma1^2.
    double gamma_e() const { return beta * p_c * tau_c / sigma1_sq; }
};

/// varpi = (3e8 / (4 pi f))^2, beta = varpi / d^rho.
std::pair<double, double> path_loss(double f, double d, double rho);

/// Scalar training pilot carrying the whole training energy p_c tau_c.
struct Pilot {
    cplx s{0.0, 0.0};
    double energy = 0.0;  ///< |s|^2, J

    static Pilot from_power(double p_c, double tau_c, double phase = 0.0);
};

struct ChannelRealization {
    CVec h;            ///< complex amplitude gains, length N
    double beta = 0.0;  ///< large-scale gain, E|h_i|^2
};

/// Rayleigh block-fading draw, entries CN(0, beta).
ChannelRealization draw_channel(int n, double beta, std::mt19937_64& rng);

/// Circularly-symmetric complex Gaussian noise, entries CN(0, sigma_sq).
CVec draw_noise(int n, double sigma_sq, std::mt19937_64& rng);

/// Effective uplink channels under joint TX/RX imbalance:
///   h_A,i = R1_i h_i T1 + R2_i conj(h_i) conj(T2)
///   h_B,i = R1_i h_i T2 + R2_i conj(h_i) conj(T1)
/// where (T1, T2) is the user TX pair and (R1_i, R2_i) the per-antenna RX pair.
std::pair<CVec, CVec> effective_uplink_channels(const ChannelRealization& ch,
                                                const IqiProfile& prof, int user = 0);

/// Training observation y_J = h_A s + h_B conj(s) + n_J, with the impaired
/// noise n_J,i = R1_i n_i + R2_i conj(n_i) derived from ideal-domain noise n.
struct UplinkObservation {
    CVec y_J;
    CVec h_A;
    CVec h_B;
    CVec n_J;
};

UplinkObservation observe_uplink(const ChannelRealization& ch, const IqiProfile& prof,
                                 const Pilot& pilot, const CVec& noise, int user = 0);

/// Same, drawing the ideal-domain noise internally with variance sigma1_sq.
UplinkObservation observe_uplink(const ChannelRealization& ch, const IqiProfile& prof,
                                 const Pilot& pilot, double sigma1_sq, std::mt19937_64& rng,
                                 int user = 0);

}  // namespace iqbeam
