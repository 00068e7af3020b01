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

#include <random>

#include "iqbeam/realcomplex.hpp"

using namespace iqbeam;

namespace {

CVec random_cvec(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
    return v;
}

CMat random_cmat(int r, int c, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

}  // namespace

TEST_CASE("embed_vec stacks real over imaginary") {
    CVec u(1);
    u << cplx(1.0, 2.0);
    const RVec r = embed_vec(u);
    CHECK(r.size() == 2);
    CHECK(r(0) == 1.0);
    CHECK(r(1) == 2.0);

    CVec z = CVec::Zero(2);
    CHECK(embed_vec(z) == RVec::Zero(4));

    CVec u2(2);
    u2 << cplx(3.0, -4.0), cplx(0.0, 1.0);
    const RVec r2 = embed_vec(u2);
    RVec expect(4);
    expect << 3.0, 0.0, -4.0, 1.0;
    CHECK(r2 == expect);
}

TEST_CASE("embed round trip is lossless") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        const CVec u = random_cvec(1 + static_cast<int>(rng() % 8), rng);
        CHECK(unembed_vec(embed_vec(u)) == u);
    }
}

TEST_CASE("embed_mat block structure") {
    CMat U(1, 1);
    U << cplx(0.0, 1.0);
    RMat expect(2, 2);
    expect << 0.0, -1.0, 1.0, 0.0;
    CHECK(embed_mat(U) == expect);

    CHECK(embed_mat(CMat::Identity(3, 3)) == RMat::Identity(6, 6));
}

TEST_CASE("embedding is a homomorphism") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const CMat U = random_cmat(n, n, rng);
        const CMat V = random_cmat(n, n, rng);
        const CVec u = random_cvec(n, rng);
        CHECK((embed_mat(U) * embed_vec(u) - embed_vec(U * u)).norm() <=
              1e-12 * embed_vec(U * u).norm());
        CHECK((embed_mat(U) * embed_mat(V) - embed_mat(U * V)).norm() <=
              1e-12 * embed_mat(U * V).norm());
    }
}

TEST_CASE("solve2x2 identity and hand-inverted cases") {
    Eigen::Matrix2d eye = Eigen::Matrix2d::Identity();
    CHECK(solve2x2(eye, {3.0, 4.0}) == Eigen::Vector2d(3.0, 4.0));

    Eigen::Matrix2d m;
    m << 2.0, 0.0, 0.0, -2.0;
    CHECK(solve2x2(m, {2.0, 2.0}) == Eigen::Vector2d(1.0, -1.0));
}

TEST_CASE("solve2x2 rejects rank-deficient systems") {
    Eigen::Matrix2d m;
    m << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(solve2x2(m, {1.0, 2.0}), SingularSystem);
    try {
        solve2x2(m, {1.0, 2.0});
    } catch (const SingularSystem& e) {
        CHECK(e.det() == 0.0);
        CHECK(e.threshold() >= 0.0);
    }
}

TEST_CASE("solve2x2 residual bound on random well-conditioned systems") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    int solved = 0;
    for (int rep = 0; rep < 1000000; ++rep) {
        Eigen::Matrix2d m;
        m << g(rng), g(rng), g(rng), g(rng);
        const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (std::abs(det) < 0.05 * m.squaredNorm()) continue;
        const Eigen::Vector2d r(g(rng), g(rng));
        const Eigen::Vector2d x = solve2x2(m, r);
        REQUIRE((m * x - r).norm() <= 1e-12 * (m.norm() * x.norm() + r.norm()));
        ++solved;
    }
    CHECK(solved > 500000);
}

TEST_CASE("principal_eigenpair on diagonal and hand-computed matrices") {
    RMat d(2, 2);
    d << 4.0, 0.0, 0.0, 0.0;
    EigenPair p = principal_eigenpair(d);
    CHECK(p.lambda == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(p.v(0)) == doctest::Approx(1.0).epsilon(1e-12));

    RMat deg(2, 2);
    deg << 2.0, 0.0, 0.0, 2.0;
    p = principal_eigenpair(deg);
    CHECK(p.lambda == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(quadratic_form(deg, p.v) == doctest::Approx(2.0).epsilon(1e-12));

    RMat m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;
    p = principal_eigenpair(m);
    CHECK(p.lambda == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(p.v(0)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(std::abs(p.v(1)) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("principal_eigenpair residual and dominance contracts") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 10);
        RMat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = g(rng);
        RMat m = a * a.transpose();  // symmetric PSD
        const EigenPair p = principal_eigenpair(m);
        CHECK(std::abs(p.v.norm() - 1.0) <= 1e-12);
        CHECK((m * p.v - p.lambda * p.v).norm() <= 1e-11 * m.norm());
        for (int probe = 0; probe < 1000; ++probe) {
            RVec q(n);
            for (int i = 0; i < n; ++i) q(i) = g(rng);
            q.normalize();
            REQUIRE(p.lambda >= quadratic_form(m, q) - 1e-9);
        }
    }
}

TEST_CASE("principal_eigenpair rejects nonsymmetric input") {
    RMat m(2, 2);
    m << 1.0, 5.0, 0.0, 1.0;
    CHECK_THROWS_AS(principal_eigenpair(m), NotSymmetric);
}

TEST_CASE("quadratic_form basics") {
    RVec v(2);
    v << 3.0, 4.0;
    CHECK(quadratic_form(RMat::Identity(2, 2), v) == 25.0);
    CHECK(quadratic_form(RMat::Zero(2, 2), v) == 0.0);

    RMat m(2, 2);
    m << 4.0, 0.0, 0.0, 0.0;
    RVec e1(2);
    e1 << 1.0, 0.0;
    CHECK(quadratic_form(m, e1) == 4.0);

    CHECK_THROWS_AS(quadratic_form(RMat::Identity(3, 3), v), DimensionMismatch);
}
