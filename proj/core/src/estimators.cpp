// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/estimators.hpp"

#include <cmath>

namespace iqbeam {

ChannelEstimate lse_benchmark(const CVec& y_J, const Pilot& pilot) {
    if (pilot.energy <= 0.0) {
        throw ConfigError("lse_benchmark: pilot energy must be > 0");
    }
    return {(y_J * std::conj(pilot.s)) / pilot.energy, EstimatorKind::Benchmark};
}

PilotCoupled pilot_coupling(const Pilot& pilot, const IqiProfile& prof, int user) {
    const int n = prof.antennas();
    const IqiCoeffPair& t = prof.tx_user.at(user);
    const cplx s = pilot.s;
    const cplx sc = std::conj(s);
    PilotCoupled pc;
    pc.a_diag.resize(n);
    pc.b_diag.resize(n);
    for (int i = 0; i < n; ++i) {
        const IqiCoeffPair& r = prof.rx_source[i];
        pc.a_diag(i) = r.c1 * (t.c1 * s + t.c2 * sc);
        pc.b_diag(i) = r.c2 * (std::conj(t.c2) * s + std::conj(t.c1) * sc);
    }
    return pc;
}

NormalSystem build_normal_system(const CVec& y_J, const Pilot& pilot, const IqiProfile& prof,
                                 int user) {
    const int n = prof.antennas();
    if (y_J.size() != n) {
        throw DimensionMismatch("build_normal_system: observation length mismatch");
    }
    NormalSystem sys;
    sys.coupled = pilot_coupling(pilot, prof, user);
    sys.z_a.resize(n);
    sys.z_b.resize(n);
    sys.y_ab.resize(n);
    for (int i = 0; i < n; ++i) {
        const cplx a = sys.coupled.a_diag(i);
        const cplx b = sys.coupled.b_diag(i);
        sys.z_a(i) = std::norm(a) + std::norm(b);
        sys.z_b(i) = 2.0 * a * std::conj(b);
        sys.y_ab(i) = a * std::conj(y_J(i)) + std::conj(b) * y_J(i);
    }
    return sys;
}

ChannelEstimate lse_optimal(const NormalSystem& sys, double eps) {
    const int n = static_cast<int>(sys.z_a.size());
    CVec h_hat(n);
    for (int i = 0; i < n; ++i) {
        const double za = sys.z_a(i);
        const double re_zb = sys.z_b(i).real();
        const double im_zb = sys.z_b(i).imag();
        // det = |Z_B|^2 - Z_A^2 = -(|A|^2 - |B|^2)^2
        const double det = re_zb * re_zb + im_zb * im_zb - za * za;
        if (std::abs(det) <= eps * za * za) {
            throw SingularAntenna(i);
        }
        if (re_zb == 0.0 && im_zb == 0.0) {
            // diagonal system: h_i = conj(y_AB,i) / Z_A,i, which reproduces the
            // benchmark estimate bit-for-bit when the image path vanishes
            h_hat(i) = std::conj(sys.y_ab(i)) / za;
            continue;
        }
        Eigen::Matrix2d m;
        m << za + re_zb, -im_zb, im_zb, -za + re_zb;
        const Eigen::Vector2d sol =
            solve2x2(m, Eigen::Vector2d(sys.y_ab(i).real(), sys.y_ab(i).imag()), 0.0);
        h_hat(i) = cplx(sol(0), sol(1));
    }
    return {std::move(h_hat), EstimatorKind::Optimal};
}

double ls_residual(const CVec& h_cand, const CVec& y_J, const Pilot& pilot,
                   const IqiProfile& prof, int user) {
    auto [h_a, h_b] = effective_uplink_channels({h_cand, 0.0}, prof, user);
    return (y_J - h_a * pilot.s - h_b * std::conj(pilot.s)).squaredNorm();
}

}  // namespace iqbeam
