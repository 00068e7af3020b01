// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "iqbeam/precoders.hpp"

using namespace iqbeam;

namespace {

CVec unit_symbols(int k) { return CVec::Ones(k); }

struct Downlink {
    CMat h_rows;
    IqiProfile prof;
};

Downlink impaired_downlink(int k, int n, double delta, std::mt19937_64& rng) {
    Downlink d;
    d.h_rows.resize(k, n);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int u = 0; u < k; ++u)
        for (int i = 0; i < n; ++i) d.h_rows(u, i) = cplx(g(rng), g(rng));
    d.prof = make_profile(n, k, IqiDelta::uniform(delta), rng);
    return d;
}

}  // namespace

TEST_CASE("mrt direction and power budget") {
    ChannelEstimate est;
    est.h_hat = CVec(2);
    est.h_hat << cplx(3.0, 0.0), cplx(0.0, 4.0);
    const PrecoderVec x = mrt(est, 2.0);
    CHECK(x.budget == 2.0);
    CHECK(x.x.squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));
    // conj(h)/||h|| scaled by sqrt(2): h = (3, 4j), ||h|| = 5
    CHECK(std::abs(x.x(0) - std::sqrt(2.0) * cplx(0.6, 0.0)) <= 1e-15);
    CHECK(std::abs(x.x(1) - std::sqrt(2.0) * cplx(0.0, -0.8)) <= 1e-15);

    est.h_hat = CVec::Zero(2);
    CHECK_THROWS_AS(mrt(est, 1.0), ConfigError);
}

TEST_CASE("downlink coupling collapses to h s without imbalance") {
    std::mt19937_64 rng(113);
    Downlink d = impaired_downlink(2, 5, 0.4, rng);
    d.prof = ideal_profile(5, 2);
    const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, unit_symbols(2));
    CHECK((c.a - d.h_rows).norm() == 0.0);
    CHECK(c.b.norm() == 0.0);
}

TEST_CASE("downlink coupling matches its closed form entrywise") {
    std::mt19937_64 rng(127);
    const Downlink d = impaired_downlink(2, 4, 0.4, rng);
    CVec sym(2);
    sym << std::polar(1.0, 0.4), std::polar(1.0, -0.9);
    const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, sym);
    for (int u = 0; u < 2; ++u) {
        const auto& r = d.prof.rx_user[u];
        for (int i = 0; i < 4; ++i) {
            const auto& t = d.prof.tx_source[i];
            const cplx h = d.h_rows(u, i);
            const cplx a =
                (r.c1 * h * t.c1 + r.c2 * std::conj(h) * std::conj(t.c2)) * sym(u);
            const cplx b =
                (r.c1 * h * t.c2 + r.c2 * std::conj(h) * std::conj(t.c1)) * std::conj(sym(u));
            CHECK(std::abs(c.a(u, i) - a) <= 1e-15 * std::abs(a));
            CHECK(std::abs(c.b(u, i) - b) <= 1e-15 * std::abs(b) + 1e-30);
        }
    }
    CHECK_THROWS_AS(downlink_coupling(d.h_rows, d.prof, unit_symbols(3)), DimensionMismatch);
}

TEST_CASE("impaired noise energy scale is logged for the first user") {
    std::mt19937_64 rng(131);
    const Downlink d = impaired_downlink(1, 3, 0.4, rng);
    const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, unit_symbols(1), 2.0);
    const auto& r = d.prof.rx_user[0];
    CHECK(c.sigmaJ_sq ==
          doctest::Approx(2.0 * (std::norm(r.c1) + std::norm(r.c2))).epsilon(1e-14));
}

TEST_CASE("composite matrix: hand case a = b = [1]") {
    DownlinkCoupling c;
    c.a = CMat::Ones(1, 1);
    c.b = CMat::Ones(1, 1);
    const ZabMatrix z = build_zab(c);
    RMat expect(2, 2);
    expect << 4.0, 0.0, 0.0, 0.0;
    CHECK(z.m == expect);
}

TEST_CASE("composite matrix is symmetric PSD with rank at most 4K") {
    std::mt19937_64 rng(137);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int n = 4 + static_cast<int>(rng() % 8);
        const Downlink d = impaired_downlink(k, n, 0.4, rng);
        const ZabMatrix z = build_zab(downlink_coupling(d.h_rows, d.prof, unit_symbols(k)));
        REQUIRE((z.m - z.m.transpose()).norm() <= 1e-12 * z.m.norm());
        for (int probe = 0; probe < 200; ++probe) {
            RVec v(2 * n);
            for (int i = 0; i < 2 * n; ++i) v(i) = g(rng);
            REQUIRE(quadratic_form(z.m, v) >= -1e-10 * z.m.norm() * v.squaredNorm());
        }
        Eigen::SelfAdjointEigenSolver<RMat> es(z.m);
        int rank = 0;
        for (int i = 0; i < 2 * n; ++i) {
            if (es.eigenvalues()(i) > 1e-10 * z.m.norm()) ++rank;
        }
        REQUIRE(rank <= 4 * k);
    }
}

TEST_CASE("quadratic form of the composite equals the received signal power") {
    std::mt19937_64 rng(139);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 1000; ++rep) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const int n = 2 + static_cast<int>(rng() % 6);
        const Downlink d = impaired_downlink(k, n, 0.4, rng);
        const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, unit_symbols(k));
        const ZabMatrix z = build_zab(c);
        CVec x(n);
        for (int i = 0; i < n; ++i) x(i) = cplx(g(rng), g(rng));
        const double direct = (c.a * x + c.b * x.conjugate()).squaredNorm();
        const double viaz = quadratic_form(z.m, embed_vec(x));
        REQUIRE(std::abs(direct - viaz) <= 1e-9 * (1.0 + direct));
    }
}

TEST_CASE("optimal precoder attains p_i lambda_max and dominates random probes") {
    std::mt19937_64 rng(149);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int n : {1, 2, 3}) {
        const Downlink d = impaired_downlink(1, n, 0.4, rng);
        const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, unit_symbols(1));
        const double p_i = 2.0;
        const auto [x, lambda] = optimal_precoder(c, p_i);
        CHECK(x.x.squaredNorm() == doctest::Approx(p_i).epsilon(1e-12));
        const double p_opt = received_signal_power(d.h_rows, d.prof, x, unit_symbols(1));
        CHECK(p_opt == doctest::Approx(p_i * lambda).epsilon(1e-9));
        for (int probe = 0; probe < 100000; ++probe) {
            CVec q(n);
            for (int i = 0; i < n; ++i) q(i) = cplx(g(rng), g(rng));
            q *= std::sqrt(p_i) / q.norm();
            const double p_q =
                received_signal_power(d.h_rows, d.prof, {q, p_i}, unit_symbols(1));
            REQUIRE(p_q <= p_opt * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("no-imbalance reduction: eigen precoder matches conjugate matching") {
    std::mt19937_64 rng(151);
    Downlink d = impaired_downlink(1, 8, 0.4, rng);
    d.prof = ideal_profile(8, 1);
    const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, unit_symbols(1));
    const double p_i = 1.0;
    const auto [x, lambda] = optimal_precoder(c, p_i);
    ChannelEstimate est;
    est.h_hat = d.h_rows.row(0).transpose();
    est.kind = EstimatorKind::Optimal;
    const PrecoderVec xm = mrt(est, p_i);
    const double p_eig = received_signal_power(d.h_rows, d.prof, x, unit_symbols(1));
    const double p_mrt = received_signal_power(d.h_rows, d.prof, xm, unit_symbols(1));
    CHECK(p_eig == doctest::Approx(p_mrt).epsilon(1e-9));
    CHECK(lambda == doctest::Approx(d.h_rows.row(0).squaredNorm()).epsilon(1e-9));
}

TEST_CASE("multiuser composite eigenvalue matches the channel Gram matrix when ideal") {
    std::mt19937_64 rng(157);
    Downlink d = impaired_downlink(3, 6, 0.4, rng);
    d.prof = ideal_profile(6, 3);
    const DownlinkCoupling c = downlink_coupling(d.h_rows, d.prof, unit_symbols(3));
    const auto [x, lambda] = optimal_precoder(c, 1.0);
    Eigen::SelfAdjointEigenSolver<CMat> es(d.h_rows.adjoint() * d.h_rows);
    CHECK(lambda == doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-9));
}

TEST_CASE("zero coupling is rejected") {
    DownlinkCoupling c;
    c.a = CMat::Zero(1, 2);
    c.b = CMat::Zero(1, 2);
    CHECK_THROWS_AS(optimal_precoder(c, 1.0), ConfigError);
}
