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

#include <Eigen/Dense>

#include "qi_roclab/scenario.hpp"

namespace qi {

/// Truncation of the signal and idler Fock spaces (maximum photon numbers,
/// inclusive) for the brute-force density-matrix oracle.
struct FockTruncation {
  int n_max_signal = 60;
  int n_max_idler = 10;
  double trace_deficit_tol = 1e-8;

  int dimension() const { return (n_max_signal + 1) * (n_max_idler + 1); }
};

/// Density matrix, in the truncated product Fock basis |n_S, n_I> (index
/// n_S * (n_max_idler + 1) + n_I), of the zero-mean two-mode Gaussian state
/// with standard-form covariance (1/4)[[A I, C Z], [C Z, B I]].
///
/// Built by passing thermal states through a two-mode squeezer whose
/// parameters are solved from (A, B, C); the squeezer's Fock matrix
/// elements come from its disentangled (normal-ordered) form, so no matrix
/// exponential or inner truncation is involved.
Eigen::MatrixXd standard_form_density_matrix(double A, double B, double C,
                                             const FockTruncation& trunc);

/// Both conditional states of the scenario in the truncated Fock basis.
///
/// Throws StateError if either covariance is unphysical and TruncationError
/// (carrying suggested n_max values) if the trace deficit of either truncated
/// state exceeds trunc.trace_deficit_tol.
class FockStatePair {
 public:
  FockStatePair(const ScenarioParams& params, const FockTruncation& trunc);

  const Eigen::MatrixXd& rho(Hypothesis h) const { return h == Hypothesis::absent ? rho0_ : rho1_; }

  /// Tr(rho0^s rho1^(1-s)) with fractional powers from eigendecompositions.
  double overlap(double s) const;

  const FockTruncation& truncation() const { return trunc_; }

 private:
  FockTruncation trunc_;
  Eigen::MatrixXd rho0_, rho1_;
  Eigen::VectorXd eval0_, eval1_;
  Eigen::MatrixXd evec0_, evec1_;
};

/// Brute-force Tr(rho0^s rho1^(1-s)) in a truncated Fock space.
double qcb_oracle(const ScenarioParams& params, double s, const FockTruncation& trunc);

/// Mean and variance of the photon number of d_I = sqrt(G) c_I + sqrt(G-1) c_S^dag,
/// evaluated as Fock-space expectation values in the conditional state.
struct FockCountMoments {
  double mean;
  double variance;
};
FockCountMoments opa_fock_moments(const ScenarioParams& params, double gain, Hypothesis h,
                                  const FockTruncation& trunc);

}  // namespace qi
