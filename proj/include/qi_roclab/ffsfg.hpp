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
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "qi_roclab/baselines.hpp"
#include "qi_roclab/roc.hpp"
#include "qi_roclab/scenario.hpp"

namespace qi {

/// How each cycle's displacement is placed relative to the tentative hypothesis.
enum class NullingStrategy {
  /// Overshoot the favored hypothesis by the amount that minimizes the
  /// one-cycle error probability given the current posterior.
  locally_optimal,
  /// Null the favored hypothesis exactly (Kennedy-style cycles).
  exact,
};

/// How the effective coherent-state energy is divided over the K cycles.
enum class EnergySlicing {
  equal,      // 1/K per cycle
  geometric,  // proportional to eta (1 - eta)^k, normalized over K cycles
};

std::string_view to_string(NullingStrategy s);
std::string_view to_string(EnergySlicing s);
NullingStrategy parse_nulling(std::string_view text);
EnergySlicing parse_slicing(std::string_view text);

struct FfSfgConfig {
  int K = 200;
  double eta = 0.005;
  double n_th = 0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  NullingStrategy nulling = NullingStrategy::locally_optimal;
  EnergySlicing slicing = EnergySlicing::equal;

  void validate() const;
};

struct FfSfgTrialState {
  std::array<double, 2> log_posterior{};
  Hypothesis tentative = Hypothesis::absent;
  int cycle_index = 0;
  double remaining_energy_fraction = 1;

  static FfSfgTrialState from_priors(const Priors& priors);
  double posterior(Hypothesis h) const;
};

struct CycleCounts {
  std::uint64_t n_b = 0;
  std::uint64_t n_e = 0;
};

struct CycleOutcome {
  CycleCounts counts;
  std::array<double, 2> log_likelihood{};
};

/// Likelihood model for one feedforward cycle. Implementations describe the
/// joint law of (N_b, N_E) given the state the receiver is in before the cycle.
class CycleModel {
 public:
  virtual ~CycleModel() = default;

  virtual int cycles() const = 0;
  /// Share of the total energy consumed by cycle k.
  virtual double energy_fraction(int cycle) const = 0;
  virtual CycleCounts sample(const FfSfgTrialState& state, Hypothesis true_h, std::mt19937_64& rng) const = 0;
  /// log P(counts | h = j) for j = 0, 1, evaluated with the same receiver setting
  /// that produced the counts.
  virtual std::array<double, 2> log_likelihoods(const FfSfgTrialState& state,
                                                const CycleCounts& counts) const = 0;
  /// Sample and score one cycle; models may override to share work.
  virtual CycleOutcome run_cycle(const FfSfgTrialState& state, Hypothesis true_h, std::mt19937_64& rng) const {
    const CycleCounts counts = sample(state, true_h, rng);
    return {counts, log_likelihoods(state, counts)};
  }
};

/// The receiver as a sliced, adaptively displaced coherent-state vs. vacuum
/// discrimination with Poisson photon counting. N_E is identically zero.
class EffectiveCoherentStateModel final : public CycleModel {
 public:
  EffectiveCoherentStateModel(const ScenarioParams& params, const FfSfgConfig& config);

  int cycles() const override { return config_.K; }
  double energy_fraction(int cycle) const override;
  CycleCounts sample(const FfSfgTrialState& state, Hypothesis true_h, std::mt19937_64& rng) const override;
  std::array<double, 2> log_likelihoods(const FfSfgTrialState& state, const CycleCounts& counts) const override;
  CycleOutcome run_cycle(const FfSfgTrialState& state, Hypothesis true_h, std::mt19937_64& rng) const override;

  /// Mean N_b count of the cycle about to run, per hypothesis.
  std::array<double, 2> cycle_means(const FfSfgTrialState& state) const;
  double alpha_sq() const { return alpha_sq_; }

 private:
  FfSfgConfig config_;
  double alpha_sq_;
};

/// Effective coherent amplitude sqrt(M kappa N_S / N_B). Throws DomainError for N_B = 0.
double effective_amplitude(const ScenarioParams& params);

/// Overshoot gamma >= 0 minimizing one-cycle error for a slice of amplitude beta
/// when the favored hypothesis leads by log_odds >= 0.
double optimal_overshoot(double beta, double log_odds);

CycleCounts cycle_count_model(const FfSfgTrialState& state, Hypothesis true_h, const FfSfgConfig& config,
                              const ScenarioParams& params, std::mt19937_64& rng);

FfSfgTrialState bayes_update(const FfSfgTrialState& state, const CycleCounts& counts, const CycleModel& model);
FfSfgTrialState bayes_update(const FfSfgTrialState& state, const CycleCounts& counts, const FfSfgConfig& config,
                             const ScenarioParams& params);

Hypothesis run_trial(double zeta, Hypothesis true_h, const CycleModel& model, std::mt19937_64& rng);
Hypothesis run_trial(double zeta, Hypothesis true_h, const FfSfgConfig& config, const ScenarioParams& params,
                     std::mt19937_64& rng);

/// Random stream of one trial; depends only on its coordinates, never on scheduling.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t zeta_index, std::uint64_t trial_index, Hypothesis h);

RocCurve estimate_roc(std::span<const double> zeta_grid, const FfSfgConfig& config, const ScenarioParams& params,
                      unsigned threads = 0);

struct ErrorEstimate {
  double value = 0;
  double std_error = 0;
  std::uint64_t aborted = 0;
};

/// Monte Carlo Bayes error pi0 P_F + pi1 P_M at zeta = pi0 / pi1.
ErrorEstimate estimate_error_probability(const Priors& priors, const FfSfgConfig& config,
                                         const ScenarioParams& params, unsigned threads = 0);

}  // namespace qi
