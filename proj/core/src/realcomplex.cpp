// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/realcomplex.hpp"

#include <cmath>

namespace iqbeam {

RVec embed_vec(const CVec& u) {
    const Eigen::Index n = u.size();
    RVec out(2 * n);
    out.head(n) = u.real();
    out.tail(n) = u.imag();
    return out;
}

CVec unembed_vec(const RVec& u) {
    if (u.size() % 2 != 0) {
        throw DimensionMismatch("unembed_vec: length must be even");
    }
    const Eigen::Index n = u.size() / 2;
    CVec out(n);
    out.real() = u.head(n);
    out.imag() = u.tail(n);
    return out;
}

RMat embed_mat(const CMat& U) {
    const Eigen::Index n1 = U.rows();
    const Eigen::Index n2 = U.cols();
    RMat out(2 * n1, 2 * n2);
    out.topLeftCorner(n1, n2) = U.real();
    out.topRightCorner(n1, n2) = -U.imag();
    out.bottomLeftCorner(n1, n2) = U.imag();
    out.bottomRightCorner(n1, n2) = U.real();
    return out;
}

Eigen::Vector2d solve2x2(const Eigen::Matrix2d& m, const Eigen::Vector2d& r, double eps) {
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double scale = m.squaredNorm();
    const double threshold = eps * scale;
    if (std::abs(det) <= threshold) {
        throw SingularSystem(std::abs(det), threshold);
    }
    return Eigen::Vector2d((m(1, 1) * r(0) - m(0, 1) * r(1)) / det,
                           (m(0, 0) * r(1) - m(1, 0) * r(0)) / det);
}

EigenPair principal_eigenpair(const RMat& m, double tol, int max_iter) {
    if (m.rows() != m.cols()) {
        throw DimensionMismatch("principal_eigenpair: matrix must be square");
    }
    const double norm = m.norm();
    if ((m - m.transpose()).norm() > 1e-10 * norm) {
        throw NotSymmetric();
    }
    const Eigen::Index n = m.rows();
    if (norm == 0.0) {
        RVec v = RVec::Zero(n);
        v(0) = 1.0;
        return {0.0, v};
    }

    RVec v = RVec::Zero(n);
    v(0) = 1.0;
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        RVec w = m * v;
        const double wn = w.norm();
        if (wn <= 1e-3 * norm * v.norm()) {
            // start vector nearly in the nullspace: nudge deterministically
            v = RVec::Constant(n, 1.0).normalized();
            continue;
        }
        v = w / wn;
        lambda = v.dot(m * v);
        if ((m * v - lambda * v).norm() <= tol * norm) {
            return {lambda, v};
        }
    }

    // Slow spectral gap: full symmetric eigendecomposition.
    Eigen::SelfAdjointEigenSolver<RMat> es(m);
    lambda = es.eigenvalues()(n - 1);
    v = es.eigenvectors().col(n - 1).normalized();
    if ((m * v - lambda * v).norm() > tol * norm) {
        throw NotConverged(max_iter);
    }
    return {lambda, v};
}

double quadratic_form(const RMat& m, const RVec& v) {
    if (m.rows() != v.size() || m.cols() != v.size()) {
        throw DimensionMismatch("quadratic_form: dimensions disagree");
    }
    return v.dot(m * v);
}

}  // namespace iqbeam
