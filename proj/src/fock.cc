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

#include "qi_roclab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

namespace qi {

namespace {

double log_factorial(int n) { return std::lgamma(n + 1.0); }

double log_thermal_weight(int n, double mean) {
  if (mean <= 0) return n == 0 ? 0.0 : -INFINITY;
  return n * std::log(mean / (mean + 1)) - std::log1p(mean);
}

int required_n_max(double mean, double tol) {
  if (mean <= 0) return 1;
  const double n = std::log(tol / 4) / std::log(mean / (mean + 1));
  return static_cast<int>(std::ceil(n)) + 2;
}

struct Squeezer {
  double thermal_signal;  // mean photons of the input thermal signal mode
  double thermal_idler;
  double r;               // two-mode squeeze parameter
};

Squeezer solve_squeezer(double A, double B, double C) {
  const double disc = (A + B) * (A + B) - 4 * C * C;
  if (!(disc > 0)) throw StateError("standard-form covariance is not positive definite");
  const double s = std::sqrt(disc);
  const double nu_a = (s + A - B) / 2;
  const double nu_b = (s - A + B) / 2;
  constexpr double tol = 1e-12;
  if (nu_a < 1 - tol || nu_b < 1 - tol) {
    throw StateError("standard-form covariance violates the uncertainty principle");
  }
  return {std::max(0.0, (nu_a - 1) / 2), std::max(0.0, (nu_b - 1) / 2),
          std::atanh(2 * C / (A + B)) / 2};
}

void check_trace(const Eigen::MatrixXd& rho, double mean_signal, double mean_idler,
                 const FockTruncation& trunc) {
  const double deficit = 1 - rho.trace();
  if (deficit > trunc.trace_deficit_tol) {
    const int ns = required_n_max(mean_signal, trunc.trace_deficit_tol);
    const int ni = required_n_max(mean_idler, trunc.trace_deficit_tol);
    throw TruncationError("Fock truncation too small: trace deficit " + std::to_string(deficit) +
                              "; try n_max_signal >= " + std::to_string(ns) +
                              ", n_max_idler >= " + std::to_string(ni),
                          ns, ni);
  }
}

void validate(const FockTruncation& trunc) {
  if (trunc.n_max_signal < 1 || trunc.n_max_idler < 1 || !(trunc.trace_deficit_tol > 0)) {
    throw DomainError("Fock truncation needs n_max >= 1 and a positive trace tolerance");
  }
}

}  // namespace

Eigen::MatrixXd standard_form_density_matrix(double A, double B, double C,
                                             const FockTruncation& trunc) {
  validate(trunc);
  const Squeezer sq = solve_squeezer(A, B, C);
  const int ds = trunc.n_max_signal + 1;
  const int di = trunc.n_max_idler + 1;
  const auto at = [di](int m, int n) { return m * di + n; };

  // S(r) = exp(t a^dag b^dag) cosh(r)^-(N_a + N_b + 1) exp(-t a b), t = tanh r.
  const double t = std::tanh(sq.r);
  const double log_t = t > 0 ? std::log(t) : 0.0;
  const double log_cosh = std::log(std::cosh(sq.r));

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(ds * di, ds * di);
  std::vector<double> amp(ds);  // indexed by output signal photon number
  std::vector<std::pair<int, double>> psi;
  for (int m = 0; m < ds; ++m) {
    for (int n = 0; n < di; ++n) {
      const double log_w = log_thermal_weight(m, sq.thermal_signal) +
                           log_thermal_weight(n, sq.thermal_idler);
      if (log_w < -700) continue;
      const double w = std::exp(log_w);

      // psi = S |m, n>, supported on the diagonal n_S - n_I = m - n.
      std::fill(amp.begin(), amp.end(), 0.0);
      const int kmax = t > 0 ? std::min(m, n) : 0;
      for (int k = 0; k <= kmax; ++k) {
        const int p = m - k, q = n - k;
        const double log_ck = k * log_t - log_factorial(k) +
                              0.5 * (log_factorial(m) + log_factorial(n) - log_factorial(p) -
                                     log_factorial(q)) -
                              (p + q + 1) * log_cosh;
        const double sign_k = (k % 2) ? -1.0 : 1.0;
        const int lmax = t > 0 ? std::min(ds - 1 - p, di - 1 - q) : 0;
        for (int l = 0; l <= lmax; ++l) {
          const double log_cl = l * log_t - log_factorial(l) +
                                0.5 * (log_factorial(p + l) + log_factorial(q + l) -
                                       log_factorial(p) - log_factorial(q));
          amp[p + l] += sign_k * std::exp(log_ck + log_cl);
        }
      }
      psi.clear();
      for (int a = 0; a < ds; ++a) {
        const int b = a - (m - n);
        if (amp[a] != 0 && b >= 0 && b < di) psi.emplace_back(at(a, b), amp[a]);
      }
      for (const auto& [i, ai] : psi) {
        for (const auto& [j, aj] : psi) rho(i, j) += w * ai * aj;
      }
    }
  }
  return rho;
}

FockStatePair::FockStatePair(const ScenarioParams& params, const FockTruncation& trunc)
    : trunc_(trunc) {
  params.validate();
  validate(trunc);
  for (Hypothesis h : {Hypothesis::absent, Hypothesis::present}) {
    const Matrix4<double> cov = conditional_covariance<double>(params, h);
    if (!physicality_check(cov)) throw StateError("conditional covariance is unphysical");
    const double A = 4 * cov(0, 0), B = 4 * cov(2, 2), C = 4 * cov(0, 2);
    Eigen::MatrixXd rho = standard_form_density_matrix(A, B, C, trunc);
    check_trace(rho, (A - 1) / 2, (B - 1) / 2, trunc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(rho);
    if (h == Hypothesis::absent) {
      rho0_ = std::move(rho);
      eval0_ = eig.eigenvalues().cwiseMax(0.0);
      evec0_ = eig.eigenvectors();
    } else {
      rho1_ = std::move(rho);
      eval1_ = eig.eigenvalues().cwiseMax(0.0);
      evec1_ = eig.eigenvectors();
    }
  }
}

double FockStatePair::overlap(double s) const {
  if (!(s >= 0 && s <= 1)) throw DomainError("overlap exponent s must lie in [0, 1]");
  // Tr(rho0^s rho1^(1-s)) = sum_ij l0_i^s l1_j^(1-s) |<v0_i|v1_j>|^2
  const Eigen::MatrixXd cross = (evec0_.transpose() * evec1_).cwiseAbs2();
  const Eigen::VectorXd a = eval0_.array().pow(s);
  const Eigen::VectorXd b = eval1_.array().pow(1 - s);
  return a.dot(cross * b);
}

double qcb_oracle(const ScenarioParams& params, double s, const FockTruncation& trunc) {
  return FockStatePair(params, trunc).overlap(s);
}

FockCountMoments opa_fock_moments(const ScenarioParams& params, double gain, Hypothesis h,
                                  const FockTruncation& trunc) {
  if (!(gain >= 1)) throw DomainError("OPA gain must be >= 1");
  params.validate();
  validate(trunc);
  const Matrix4<double> cov = conditional_covariance<double>(params, h);
  const double A = 4 * cov(0, 0), B = 4 * cov(2, 2), C = 4 * cov(0, 2);
  const Eigen::MatrixXd rho = standard_form_density_matrix(A, B, C, trunc);
  check_trace(rho, (A - 1) / 2, (B - 1) / 2, trunc);

  const int ds = trunc.n_max_signal + 1;
  const int di = trunc.n_max_idler + 1;
  const int dim = ds * di;
  using Sparse = Eigen::SparseMatrix<double>;
  std::vector<Eigen::Triplet<double>> sig, idl;
  for (int m = 0; m < ds; ++m) {
    for (int n = 0; n < di; ++n) {
      if (m > 0) sig.emplace_back((m - 1) * di + n, m * di + n, std::sqrt(double(m)));
      if (n > 0) idl.emplace_back(m * di + n - 1, m * di + n, std::sqrt(double(n)));
    }
  }
  Sparse a_s(dim, dim), a_i(dim, dim);
  a_s.setFromTriplets(sig.begin(), sig.end());
  a_i.setFromTriplets(idl.begin(), idl.end());

  const Sparse d = std::sqrt(gain) * a_i + std::sqrt(gain - 1) * Sparse(a_s.transpose());
  const Sparse number = Sparse(d.transpose()) * d;
  const Eigen::MatrixXd number_dense = number;
  const double norm = rho.trace();
  const Eigen::MatrixXd rho_n = rho * number;
  const double mean = rho_n.trace() / norm;
  const double second = rho_n.cwiseProduct(number_dense.transpose()).sum() / norm;
  return {mean, second - mean * mean};
}

}  // namespace qi
