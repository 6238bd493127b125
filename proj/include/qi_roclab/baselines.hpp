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

#include <span>
#include <utility>

#include "qi_roclab/roc.hpp"
#include "qi_roclab/scenario.hpp"

namespace qi {

/// Prior probabilities of target absence (pi0) and presence (pi1).
struct Priors {
  double pi0 = 0.5;
  double pi1 = 0.5;

  /// Neyman-Pearson parameterization: pi0 = zeta / (1 + zeta), pi1 = 1 / (1 + zeta).
  static Priors from_zeta(double zeta);
  /// Throws DomainError unless both priors are positive and sum to one.
  void validate() const;
};

/// Two pure hypothesis states, described by their squared overlap.
struct PureStatePair {
  double overlap_sq = 1;  // |<psi0|psi1>|^2 in [0, 1]

  static PureStatePair coherent_vs_vacuum(double alpha_sq);
};

/// Normalized mean separation of the summed x-quadrature for coherent-state
/// illumination with per-mode mean photon number N_S and homodyne reception:
/// d' = 2 sqrt(M kappa N_S / (2 N_B + 1)).
double homodyne_deflection(const ScenarioParams& params);

/// P_D = Q(Q^{-1}(P_F) - d').
RocCurve homodyne_roc(const ScenarioParams& params, std::span<const double> pf_grid);

/// MAP error probability of the homodyne (known signal in Gaussian noise) test.
double homodyne_error_probability(const ScenarioParams& params, const Priors& priors);

/// Neyman-Pearson optimum P_D for two pure states with squared overlap X:
/// (sqrt(P_F X) + sqrt((1 - P_F)(1 - X)))^2 for P_F < X, else 1.
double coherent_np_pd(double overlap_sq, double p_f);

RocCurve coherent_np_roc(double alpha_sq, std::span<const double> pf_grid);

/// Brute-force Neyman-Pearson optimization over measurement operators
/// 0 <= E <= I on the two-dimensional span of the states.
RocCurve pure_state_np_oracle(double overlap_sq, std::span<const double> pf_grid);

/// Minimum (Helstrom) error probability for coherent state |alpha> vs vacuum:
/// (1 - sqrt(1 - 4 pi0 pi1 e^{-alpha_sq})) / 2.
double helstrom_min_error(double alpha_sq, const Priors& priors);

/// (P_F, P_D) of the projector onto the nonnegative eigenspace of
/// pi1 |psi1><psi1| - pi0 |psi0><psi0|.
std::pair<double, double> helstrom_operating_point(const PureStatePair& states, const Priors& priors);

RocCurve chance_line(std::span<const double> pf_grid);

}  // namespace qi
