// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/precoders.hpp"

#include <cmath>

namespace iqbeam {

PrecoderVec mrt(const ChannelEstimate& est, double p_i) {
    const double nrm = est.h_hat.norm();
    if (nrm <= 0.0) {
        throw ConfigError("mrt: channel estimate must be nonzero");
    }
    return {est.h_hat.conjugate() * (std::sqrt(p_i) / nrm), p_i};
}

DownlinkCoupling downlink_coupling(const CMat& h_rows, const IqiProfile& prof,
                                   const CVec& symbols, double sigma2_sq) {
    const int k = static_cast<int>(h_rows.rows());
    const int n = static_cast<int>(h_rows.cols());
    if (prof.antennas() != n || prof.users() < k || symbols.size() != k) {
        throw DimensionMismatch("downlink_coupling: profile/symbol dimensions disagree");
    }
    DownlinkCoupling c;
    c.a.resize(k, n);
    c.b.resize(k, n);
    for (int u = 0; u < k; ++u) {
        const IqiCoeffPair& r = prof.rx_user[u];
        const cplx s = symbols(u);
        const cplx sc = std::conj(s);
        for (int i = 0; i < n; ++i) {
            const IqiCoeffPair& t = prof.tx_source[i];
            const cplx h = h_rows(u, i);
            const cplx hc = std::conj(h);
            c.a(u, i) = (r.c1 * h * t.c1 + r.c2 * hc * std::conj(t.c2)) * s;
            c.b(u, i) = (r.c1 * h * t.c2 + r.c2 * hc * std::conj(t.c1)) * sc;
        }
    }
    const IqiCoeffPair& r0 = prof.rx_user[0];
    c.sigmaJ_sq = (std::norm(r0.c1) + std::norm(r0.c2)) * sigma2_sq;
    return c;
}

ZabMatrix build_zab(const DownlinkCoupling& c) {
    const CMat z_a = c.a.adjoint() * c.a + c.b.transpose() * c.b.conjugate();
    const CMat z_b = c.b.adjoint() * c.a + c.a.transpose() * c.b.conjugate();
    const Eigen::Index n = z_a.rows();
    RMat m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = z_a.real() + z_b.real();
    m.topRightCorner(n, n) = -z_a.imag() - z_b.imag();
    m.bottomLeftCorner(n, n) = z_a.imag() - z_b.imag();
    m.bottomRightCorner(n, n) = z_a.real() - z_b.real();
    return {std::move(m)};
}

std::pair<PrecoderVec, double> optimal_precoder(const DownlinkCoupling& c, double p_i,
                                                double tol) {
    const ZabMatrix zab = build_zab(c);
    if (zab.m.norm() == 0.0) {
        throw ConfigError("optimal_precoder: coupling matrix is zero");
    }
    const EigenPair top = principal_eigenpair(zab.m, tol);
    const CVec x = unembed_vec(top.v) * (std::sqrt(p_i) / top.v.norm());
    return {PrecoderVec{x, p_i}, top.lambda};
}

double received_signal_power(const CMat& h_true_rows, const IqiProfile& prof,
                             const PrecoderVec& x, const CVec& symbols) {
    const DownlinkCoupling c = downlink_coupling(h_true_rows, prof, symbols, 0.0);
    return (c.a * x.x + c.b * x.x.conjugate()).squaredNorm();
}

}  // namespace iqbeam
