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

#include <utility>

#include "iqbeam/estimators.hpp"
#include "iqbeam/impairments.hpp"
#include "iqbeam/realcomplex.hpp"

namespace iqbeam {

/// Downlink coupling rows (one per user):
///   a_k,i = (RU1_k h_k,i TS1_i + RU2_k conj(h_k,i) conj(TS2_i)) s_k
///   b_k,i = (RU1_k h_k,i TS2_i + RU2_k conj(h_k,i) conj(TS1_i)) conj(s_k)
/// The received signal component at the users is a x + b conj(x).
struct DownlinkCoupling {
    CMat a;  ///< K x N
    CMat b;  ///< K x N
    double sigmaJ_sq = 0.0;  ///< impaired downlink noise energy (first user), logged only
};

/// Transmit amplitude vector with its power budget; ||x||^2 <= p_i.
struct PrecoderVec {
    CVec x;
    double budget = 0.0;
};

/// Real composite matrix whose quadratic form on embed_vec(x) equals the
/// received signal power ||a x + b conj(x)||^2. Symmetric PSD, rank <= 4K.
struct ZabMatrix {
    RMat m;
};

/// Conjugate-matched precoder x = sqrt(p_i) conj(h_hat) / ||h_hat||.
PrecoderVec mrt(const ChannelEstimate& est, double p_i);

DownlinkCoupling downlink_coupling(const CMat& h_rows, const IqiProfile& prof,
                                   const CVec& symbols, double sigma2_sq = 0.0);

/// Block assembly from Z_a = a^H a + b^T conj(b) and Z_b = b^H a + a^T conj(b):
///   [[Re Z_a + Re Z_b, -Im Z_a - Im Z_b], [Im Z_a - Im Z_b, Re Z_a - Re Z_b]],
/// the real form of the stationarity system Z_a x + conj(Z_b) conj(x) = l x.
ZabMatrix build_zab(const DownlinkCoupling& c);

/// Power-maximizing precoder: sqrt(p_i)-scaled principal eigenvector of the
/// coupling's real composite matrix. Returns the precoder and lambda_max; the
/// achieved noiseless signal power is p_i * lambda_max.
std::pair<PrecoderVec, double> optimal_precoder(const DownlinkCoupling& c, double p_i,
                                                double tol = 1e-12);

/// Signal-component power ||a x + b conj(x)||^2 summed over users, with the
/// coupling built from the true channel and the realized imbalance profile.
double received_signal_power(const CMat& h_true_rows, const IqiProfile& prof,
                             const PrecoderVec& x, const CVec& symbols);

}  // namespace iqbeam
