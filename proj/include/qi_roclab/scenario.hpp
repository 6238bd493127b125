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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "qi_roclab/errors.hpp"

namespace qi {

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

/// Binary hypothesis: target absent (h = 0) or present (h = 1).
enum class Hypothesis : std::uint8_t { absent = 0, present = 1 };

inline int index(Hypothesis h) { return static_cast<int>(h); }
inline Hypothesis hypothesis_from_index(int j) {
  return j == 0 ? Hypothesis::absent : Hypothesis::present;
}
inline Hypothesis other(Hypothesis h) {
  return h == Hypothesis::absent ? Hypothesis::present : Hypothesis::absent;
}

/// Signal-mode variance used in the conditional covariance. `approximate`
/// keeps (2 N_B + 1) under both hypotheses; `exact` uses
/// (2 kappa N_S + 2 N_B + 1) under h = 1.
enum class SignalVariance : std::uint8_t { approximate, exact };

/// Physical parameters of the binary hypothesis test.
///
/// M is a real number so that values such as 10^7.5 can be stored exactly as
/// used; it only ever enters through products with per-mode quantities.
struct ScenarioParams {
  double M = 31622776.601683792;  // 10^7.5
  double N_S = 1e-4;
  double kappa = 0.01;
  double N_B = 20.0;
  SignalVariance signal_variance = SignalVariance::approximate;

  /// Throws DomainError naming the offending field.
  void validate() const;

  bool operator==(const ScenarioParams&) const = default;
};

struct RegimeThresholds {
  double weak_signal = 0.01;   // N_S below this counts as N_S << 1
  double bright_noise = 10.0;  // N_B above this counts as N_B >> 1
  double weak_return = 0.1;    // kappa below this counts as kappa << 1
};

bool weak_signal(const ScenarioParams& p, const RegimeThresholds& t = {});
bool bright_noise(const ScenarioParams& p, const RegimeThresholds& t = {});
bool weak_return(const ScenarioParams& p, const RegimeThresholds& t = {});

/// Phase-sensitive cross correlation sqrt(kappa N_S (N_S + 1)).
double cross_correlation(const ScenarioParams& params);

/// Symplectic form for quadrature ordering (x_S, p_S, x_I, p_I).
template <typename Scalar>
Matrix4<Scalar> symplectic_form() {
  Matrix4<Scalar> omega = Matrix4<Scalar>::Zero();
  omega(0, 1) = omega(2, 3) = Scalar(1);
  omega(1, 0) = omega(3, 2) = Scalar(-1);
  return omega;
}

/// Wigner covariance of the returned-signal / stored-idler pair given h, in
/// the convention where the vacuum has variance 1/4 per quadrature:
///
///   (1/4) [[(2N_B+1) I, 2 C_q Z d_{1h}], [2 C_q Z d_{1h}, (2N_S+1) I]]
template <typename Scalar>
Matrix4<Scalar> conditional_covariance(const ScenarioParams& params, Hypothesis h) {
  params.validate();
  const Scalar ns = params.N_S;
  const Scalar nb = params.N_B;
  const Scalar kappa = params.kappa;
  Scalar signal = 2 * nb + 1;
  if (params.signal_variance == SignalVariance::exact && h == Hypothesis::present) {
    signal += 2 * kappa * ns;
  }
  const Scalar idler = 2 * ns + 1;
  const Scalar cross =
      h == Hypothesis::present ? 2 * std::sqrt(kappa * ns * (ns + 1)) : Scalar(0);

  Matrix4<Scalar> v = Matrix4<Scalar>::Zero();
  v(0, 0) = v(1, 1) = signal;
  v(2, 2) = v(3, 3) = idler;
  v(0, 2) = v(2, 0) = cross;
  v(1, 3) = v(3, 1) = -cross;
  return v / Scalar(4);
}

/// True iff cov + (i/4) Omega is positive semidefinite within `tol`.
/// Throws ShapeError for a non-symmetric input.
template <typename Scalar>
bool physicality_check(const Matrix4<Scalar>& cov, Scalar tol = Scalar(1e-12)) {
  const Scalar scale = std::max(Scalar(1), cov.cwiseAbs().maxCoeff());
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
    throw ShapeError("physicality_check: covariance is not symmetric");
  }
  using Complex = std::complex<Scalar>;
  const Matrix4<Scalar> sym = (cov + cov.transpose()) / Scalar(2);
  Eigen::Matrix<Complex, 4, 4> h = sym.template cast<Complex>();
  h += Complex(0, Scalar(0.25)) * symplectic_form<Scalar>().template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, 4, 4>> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tol;
}

/// Flat key-value form (`M = ...`, one key per line). Values are written with
/// 17 significant digits so reading them back reproduces the same doubles.
void write_scenario(std::ostream& out, const ScenarioParams& params);
ScenarioParams read_scenario(std::istream& in);

/// `%.17g` formatting; every double written this way reads back bit-exact.
std::string format_double(double x);

/// Parses a decimal number, also accepting `10^x` notation. Throws DomainError.
double parse_double(const std::string& text);

}  // namespace qi
