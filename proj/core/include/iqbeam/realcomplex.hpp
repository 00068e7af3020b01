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

#include <Eigen/Dense>
#include <complex>

#include "iqbeam/errors.hpp"

namespace iqbeam {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Top eigenvalue of a symmetric PSD matrix together with a unit-norm eigenvector.
struct EigenPair {
    double lambda = 0.0;
    RVec v;
};

/// [Re{u}; Im{u}] stacking of a complex vector into a real vector of twice the length.
RVec embed_vec(const CVec& u);

/// Inverse of embed_vec; the round trip is lossless.
CVec unembed_vec(const RVec& u);

/// [[Re U, -Im U], [Im U, Re U]] real composite of a complex matrix. The
/// embedding is a ring homomorphism: products and matrix-vector actions commute
/// with it.
RMat embed_mat(const CMat& U);

/// Direct 2x2 solve by Cramer's rule. Throws SingularSystem when
/// |det| <= eps * ||M||_F^2.
Eigen::Vector2d solve2x2(const Eigen::Matrix2d& m, const Eigen::Vector2d& r, double eps = 1e-14);

/// Principal eigenpair of a symmetric PSD matrix. Power iteration from the
/// deterministic start e_1, with a full symmetric eigendecomposition as
/// fallback when iteration stalls (near-degenerate top eigenvalues).
/// Residual contract: ||M v - lambda v|| <= tol * ||M||_F.
EigenPair principal_eigenpair(const RMat& m, double tol = 1e-12, int max_iter = 10000);

/// v^T M v
double quadratic_form(const RMat& m, const RVec& v);

}  // namespace iqbeam
