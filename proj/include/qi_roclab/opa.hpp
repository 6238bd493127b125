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

#include <array>
#include <span>

#include "qi_roclab/baselines.hpp"
#include "qi_roclab/gaussian.hpp"
#include "qi_roclab/roc.hpp"
#include "qi_roclab/scenario.hpp"

namespace qi {

/// OPA receiver operating parameters: gain G > 1, a threshold on the total
/// d_I photon count, and the number of mode pairs.
struct OpaConfig {
  double gain = 1.001;
  double threshold = 0;
  double M = 1;

  void validate() const;
  /// Decide h = 1 when the total count reaches the threshold.
  Hypothesis decide(double total_count) const;
};

/// Per-mode photon-count mean and variance of the d_I output, per hypothesis.
struct CountStatistics {
  std::array<double, 2> mean{};
  std::array<double, 2> variance{};

  double mean_of(Hypothesis h) const { return mean[index(h)]; }
  double variance_of(Hypothesis h) const { return variance[index(h)]; }
};

/// Covariance after the gain-G two-mode squeezer. Throws DomainError for G < 1.
template <typename Scalar>
Matrix4<Scalar> opa_output_covariance(const Matrix4<Scalar>& cov, Scalar gain) {
  if (!(gain >= 1)) throw DomainError("OPA gain must be >= 1");
  const Matrix4<Scalar> s = two_mode_squeezer(gain);
  return s * cov * s.transpose();
}

/// Exact Gaussian moments of the d_I photon number. Throws DomainError for G <= 1.
CountStatistics opa_count_statistics(const ScenarioParams& params, double gain);

/// ROC of the total-count threshold test under the central-limit Gaussian
/// approximation, counts ~ Normal(M N_h, M sigma_h^2).
RocCurve opa_roc(const ScenarioParams& params, double gain, std::span<const double> pf_grid);

/// Threshold (total counts) that gives false-alarm probability p_f.
OpaConfig opa_np_config(const ScenarioParams& params, double gain, double p_f);

/// MAP (maximum posterior) error probability pi0 P_F + pi1 P_M under the
/// Gaussian approximation; handles unequal variances exactly (two-sided region).
double opa_error_probability(const ScenarioParams& params, double gain, const Priors& priors);

/// Large-M decay rate of the equal-prior error probability under the Gaussian
/// approximation: (N_1 - N_0)^2 / (2 (sigma_0 + sigma_1)^2).
double opa_error_exponent(const ScenarioParams& params, double gain);

struct OpaObjective {
  enum class Kind { error_probability, detection_at_pf };
  Kind kind = Kind::error_probability;
  Priors priors{};
  double p_f = 0.1;

  static OpaObjective error_probability(const Priors& priors) { return {Kind::error_probability, priors, 0}; }
  static OpaObjective detection_at(double p_f) { return {Kind::detection_at_pf, {}, p_f}; }
};

struct GainSearch {
  double bracket = 0.1;     // search G in (1, 1 + bracket]
  double tolerance = 1e-9;  // absolute, on G
  int scan_points = 400;    // log-spaced coarse scan of G - 1
};

struct GainOptimum {
  double gain = 1;
  double objective = 0;        // Pr(e), or P_D for detection_at_pf
  bool degenerate = false;     // objective independent of G (no cross correlation)
  bool multistart = false;     // coarse scan found more than one local optimum
  bool at_bracket_edge = false;  // optimum pinned at G = 1 + bracket

  bool best_found() const { return multistart || at_bracket_edge; }
};

GainOptimum opa_optimize_gain(const ScenarioParams& params, const OpaObjective& objective,
                              const GainSearch& search = {});

/// ROC with the gain re-optimized for P_D at every grid point.
RocCurve opa_roc_per_point(const ScenarioParams& params, std::span<const double> pf_grid,
                           const GainSearch& search = {});

}  // namespace qi
