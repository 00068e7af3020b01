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

#include "iqbeam/airlink.hpp"
#include "iqbeam/impairments.hpp"
#include "iqbeam/realcomplex.hpp"

namespace iqbeam {

enum class EstimatorKind { Benchmark, Optimal };

struct ChannelEstimate {
    CVec h_hat;
    EstimatorKind kind = EstimatorKind::Benchmark;
};

/// Diagonals of the pilot-coupled matrices:
///   A_i = R1_i (T1 s + T2 conj(s)),  B_i = R2_i (conj(T2) s + conj(T1) conj(s)).
struct PilotCoupled {
    CVec a_diag;
    CVec b_diag;
};

/// Normal equations of the widely-linear LS problem, all diagonal:
///   Z_A,i = |A_i|^2 + |B_i|^2,  Z_B,i = 2 A_i conj(B_i),
///   y_AB,i = A_i conj(y_J,i) + conj(B_i) y_J,i.
struct NormalSystem {
    RVec z_a;
    CVec z_b;
    CVec y_ab;
    PilotCoupled coupled;
};

/// Conventional pseudo-inverse estimate of the effective channel h_A:
/// h_hat = y_J conj(s) / (p_c tau_c). Ignores the conjugate signal path, so it
/// carries an imbalance-induced bias h_B conj(s)^2 / (p_c tau_c).
ChannelEstimate lse_benchmark(const CVec& y_J, const Pilot& pilot);

PilotCoupled pilot_coupling(const Pilot& pilot, const IqiProfile& prof, int user = 0);

NormalSystem build_normal_system(const CVec& y_J, const Pilot& pilot, const IqiProfile& prof,
                                 int user = 0);

/// Globally-optimal widely-linear LS estimate of h. The diagonal structure
/// decouples the stationarity system into N independent 2x2 real solves:
///   [[Z_A + Re Z_B, -Im Z_B], [Im Z_B, -Z_A + Re Z_B]] [Re h; Im h] = [Re y_AB; Im y_AB].
/// Throws SingularAntenna(i) when |det_i| = (|A_i|^2 - |B_i|^2)^2 <= eps Z_A,i^2.
ChannelEstimate lse_optimal(const NormalSystem& sys, double eps = 1e-10);

/// LS training residual E = ||y_J - h_A s - h_B conj(s)||^2 with (h_A, h_B)
/// derived from the candidate channel.
double ls_residual(const CVec& h_cand, const CVec& y_J, const Pilot& pilot,
                   const IqiProfile& prof, int user = 0);

}  // namespace iqbeam
