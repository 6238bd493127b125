// Copyright 2026 The qi-roclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense Gaussian-state algebra on 4x4 two-mode covariance matrices. All
// routines take and return covariances in the vacuum-variance-1/4 convention
// used by conditional_covariance().

#include <cmath>

#include <Eigen/Dense>

#include "qi_roclab/scenario.hpp"

namespace qi {

/// Symmetric square root of a positive semidefinite matrix.
template <typename Derived>
typename Derived::PlainObject symmetric_sqrt(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  using Scalar = typename Derived::Scalar;
  Eigen::SelfAdjointEigenSolver<Plain> eig(m);
  const auto root = eig.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

/// Symplectic eigenvalues of a two-mode covariance, in units where the vacuum
/// has eigenvalue 1, sorted ascending.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> symplectic_spectrum(const Matrix4<Scalar>& cov) {
  const Matrix4<Scalar> v = Scalar(4) * cov;
  const Matrix4<Scalar> root = symmetric_sqrt(v);
  const Matrix4<Scalar> omega = symplectic_form<Scalar>();
  const Matrix4<Scalar> b = root * omega.transpose() * v * omega * root;
  Eigen::SelfAdjointEigenSolver<Matrix4<Scalar>> eig(b, Eigen::EigenvaluesOnly);
  // Each symplectic eigenvalue appears twice (squared) in b.
  const auto w = eig.eigenvalues().cwiseMax(Scalar(0)).cwiseSqrt();
  return {(w(0) + w(1)) / 2, (w(2) + w(3)) / 2};
}

namespace detail {

// Per-state ingredients of the Gaussian fidelity-type trace Tr(rho0^s rho1^(1-s)):
// the matrix S Lambda_p(D) S^T (vacuum-1 units) and sum_k ln G_p(nu_k).
template <typename Scalar>
struct PowerTerms {
  Matrix4<Scalar> sigma;
  Scalar log_g;
};

template <typename Scalar>
PowerTerms<Scalar> power_terms(const Matrix4<Scalar>& cov, Scalar p) {
  using std::log;
  using std::pow;
  using std::sqrt;
  const Matrix4<Scalar> v = Scalar(4) * cov;
  const Matrix4<Scalar> root = symmetric_sqrt(v);
  const Matrix4<Scalar> omega = symplectic_form<Scalar>();
  // b = V^{1/2} Omega^T V Omega V^{1/2} has eigenvalues nu_k^2 (each twice) and
  // S f(D) S^T = V^{1/2} phi(b) V^{1/2} with phi(nu^2) = f(nu) / nu.
  const Matrix4<Scalar> b = root * omega.transpose() * v * omega * root;
  Eigen::SelfAdjointEigenSolver<Matrix4<Scalar>> eig(b);
  Eigen::Matrix<Scalar, 4, 1> phi;
  Scalar log_g = 0;
  for (int i = 0; i < 4; ++i) {
    const Scalar nu = std::max(Scalar(1), sqrt(std::max(Scalar(0), eig.eigenvalues()(i))));
    const Scalar up = pow(nu + 1, p);
    const Scalar down = pow(nu - 1, p);
    phi(i) = (up + down) / (up - down) / nu;
    log_g += (p * log(Scalar(2)) - log(up - down)) / 2;
  }
  const Matrix4<Scalar> f = eig.eigenvectors() * phi.asDiagonal() * eig.eigenvectors().transpose();
  return {root * f * root, log_g};
}

}  // namespace detail

/// ln Tr(rho0^s rho1^(1-s)) for two zero-mean two-mode Gaussian states given
/// by their covariances. Returns 0 at s = 0 and s = 1.
///
/// Throws DomainError for s outside [0, 1] and StateError if either covariance
/// fails the uncertainty test.
template <typename Scalar>
Scalar gaussian_log_overlap(const Matrix4<Scalar>& cov0, const Matrix4<Scalar>& cov1, Scalar s) {
  if (!(s >= 0 && s <= 1)) throw DomainError("overlap exponent s must lie in [0, 1]");
  const Scalar tol(1e-12);
  if (!physicality_check(cov0, tol) || !physicality_check(cov1, tol)) {
    throw StateError("overlap requested for an unphysical covariance");
  }
  if (s == 0 || s == 1) return Scalar(0);
  const auto a = detail::power_terms(cov0, s);
  const auto b = detail::power_terms(cov1, Scalar(1) - s);
  const Matrix4<Scalar> sigma = a.sigma + b.sigma;
  Eigen::LDLT<Matrix4<Scalar>> ldlt(sigma);
  const Scalar log_det = ldlt.vectorD().array().log().sum();
  return Scalar(2) * std::log(Scalar(2)) + a.log_g + b.log_g - log_det / 2;
}

/// Symplectic matrix of the gain-G two-mode squeezer
/// d_S = sqrt(G) c_S + sqrt(G-1) c_I^dag, d_I = sqrt(G) c_I + sqrt(G-1) c_S^dag.
template <typename Scalar>
Matrix4<Scalar> two_mode_squeezer(Scalar gain) {
  const Scalar c = std::sqrt(gain);
  const Scalar s = std::sqrt(gain - 1);
  Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
  m.diagonal().setConstant(c);
  m(0, 2) = m(2, 0) = s;
  m(1, 3) = m(3, 1) = -s;
  return m;
}

/// Photon-number mean and variance of a zero-mean single-mode Gaussian state
/// with 2x2 covariance `v` (vacuum variance 1/4).
template <typename Scalar>
struct PhotonMoments {
  Scalar mean;
  Scalar variance;
};

template <typename Scalar>
PhotonMoments<Scalar> photon_moments(const Matrix2<Scalar>& v) {
  const Scalar mean = v(0, 0) + v(1, 1) - Scalar(0.5);
  const Scalar variance =
      2 * (v(0, 0) * v(0, 0) + v(1, 1) * v(1, 1) + 2 * v(0, 1) * v(0, 1)) - Scalar(0.25);
  return {mean, variance};
}

}  // namespace qi
