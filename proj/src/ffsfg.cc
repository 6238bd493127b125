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

#include "qi_roclab/ffsfg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qi_roclab/parallel.hpp"
#include "qi_roclab/stats.hpp"

namespace qi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Hypothesis argmax(const std::array<double, 2>& log_p) {
  return log_p[1] > log_p[0] ? Hypothesis::present : Hypothesis::absent;
}

std::uint64_t draw_poisson(double mu, std::mt19937_64& rng) {
  if (!(mu > 0)) return 0;
  std::poisson_distribution<std::uint64_t> dist(mu);
  return dist(rng);
}

}  // namespace

std::string_view to_string(NullingStrategy s) {
  return s == NullingStrategy::exact ? "exact" : "locally-optimal";
}

std::string_view to_string(EnergySlicing s) {
  return s == EnergySlicing::geometric ? "geometric" : "equal";
}

NullingStrategy parse_nulling(std::string_view text) {
  if (text == "locally-optimal") return NullingStrategy::locally_optimal;
  if (text == "exact") return NullingStrategy::exact;
  throw DomainError("unknown nulling strategy: " + std::string(text));
}

EnergySlicing parse_slicing(std::string_view text) {
  if (text == "equal") return EnergySlicing::equal;
  if (text == "geometric") return EnergySlicing::geometric;
  throw DomainError("unknown energy slicing: " + std::string(text));
}

void FfSfgConfig::validate() const {
  if (K < 1) throw DomainError("K must be >= 1");
  if (!(eta > 0 && eta < 1)) throw DomainError("eta must lie in (0, 1)");
  if (!(n_th >= 0) || !std::isfinite(n_th)) throw DomainError("n_th must be finite and >= 0");
  if (trials < 1) throw DomainError("trials must be >= 1");
}

FfSfgTrialState FfSfgTrialState::from_priors(const Priors& priors) {
  FfSfgTrialState s;
  s.log_posterior = {std::log(priors.pi0), std::log(priors.pi1)};
  s.tentative = argmax(s.log_posterior);
  return s;
}

double FfSfgTrialState::posterior(Hypothesis h) const { return std::exp(log_posterior[index(h)]); }

double effective_amplitude(const ScenarioParams& params) {
  params.validate();
  if (!(params.N_B > 0)) throw DomainError("effective amplitude needs N_B > 0");
  return std::sqrt(params.M * params.kappa * params.N_S / params.N_B);
}

double optimal_overshoot(double beta, double log_odds) {
  if (!(beta > 0) || !std::isfinite(log_odds)) return 0;
  const double L = std::max(log_odds, 0.0);
  const double log_beta = std::log(beta);
  // g(u) = 0 with u = ln(gamma); g is strictly increasing.
  const double c = (L + beta * beta) / beta;
  const double wide = (std::sqrt(c * c + 8) - c) / 4;
  const double narrow = beta / std::expm1(L + beta * beta);
  // Starting point: the smaller of the gamma >> beta and gamma << 1 approximations.
  double u = std::log(std::min(wide, narrow));
  double lo = -kInf, hi = 0;  // g(0) >= L + beta + beta^2 > 0
  for (int it = 0; it < 100; ++it) {
    const double e = std::exp(u);
    const double gu = L + u - log_beta - std::log1p(e / beta) + 2 * beta * e + beta * beta;
    if (gu > 0) hi = u; else lo = u;
    const double slope = beta / (beta + e) + 2 * beta * e;
    const double step = gu / slope;
    if (std::abs(step) < 1e-12 * (1 + std::abs(u))) break;
    double next = u - step;
    if (!(next < hi) || !(next > lo)) next = std::isfinite(lo) ? 0.5 * (lo + hi) : std::min(next, hi - 1);
    u = next;
  }
  return std::exp(u);
}

EffectiveCoherentStateModel::EffectiveCoherentStateModel(const ScenarioParams& params, const FfSfgConfig& config)
    : config_(config) {
  config_.validate();
  const double alpha = effective_amplitude(params);
  alpha_sq_ = alpha * alpha;
}

double EffectiveCoherentStateModel::energy_fraction(int cycle) const {
  if (cycle < 0 || cycle >= config_.K) throw SequencingError("cycle index outside [0, K)");
  if (config_.slicing == EnergySlicing::equal) return 1.0 / config_.K;
  const double q = 1 - config_.eta;
  return config_.eta * std::pow(q, cycle) / -std::expm1(config_.K * std::log(q));
}

std::array<double, 2> EffectiveCoherentStateModel::cycle_means(const FfSfgTrialState& state) const {
  const double beta = std::sqrt(alpha_sq_ * energy_fraction(state.cycle_index));
  const Hypothesis f = state.tentative;
  double gamma = 0;
  if (config_.nulling == NullingStrategy::locally_optimal) {
    gamma = optimal_overshoot(beta, state.log_posterior[index(f)] - state.log_posterior[index(other(f))]);
  }
  std::array<double, 2> means{};
  means[index(f)] = gamma * gamma + config_.n_th;
  means[index(other(f))] = (beta + gamma) * (beta + gamma) + config_.n_th;
  return means;
}

CycleCounts EffectiveCoherentStateModel::sample(const FfSfgTrialState& state, Hypothesis true_h,
                                                std::mt19937_64& rng) const {
  return {draw_poisson(cycle_means(state)[index(true_h)], rng), 0};
}

namespace {

std::array<double, 2> count_log_likelihoods(const std::array<double, 2>& means, const CycleCounts& counts) {
  const double retained = counts.n_e == 0 ? 0.0 : -kInf;
  return {poisson_log_pmf(counts.n_b, means[0]) + retained, poisson_log_pmf(counts.n_b, means[1]) + retained};
}

}  // namespace

std::array<double, 2> EffectiveCoherentStateModel::log_likelihoods(const FfSfgTrialState& state,
                                                                   const CycleCounts& counts) const {
  return count_log_likelihoods(cycle_means(state), counts);
}

CycleOutcome EffectiveCoherentStateModel::run_cycle(const FfSfgTrialState& state, Hypothesis true_h,
                                                    std::mt19937_64& rng) const {
  const auto means = cycle_means(state);
  const CycleCounts counts{draw_poisson(means[index(true_h)], rng), 0};
  return {counts, count_log_likelihoods(means, counts)};
}

CycleCounts cycle_count_model(const FfSfgTrialState& state, Hypothesis true_h, const FfSfgConfig& config,
                              const ScenarioParams& params, std::mt19937_64& rng) {
  if (state.cycle_index >= config.K) throw SequencingError("all K cycles already used");
  return EffectiveCoherentStateModel(params, config).sample(state, true_h, rng);
}

namespace {

FfSfgTrialState apply_likelihoods(const FfSfgTrialState& state, const std::array<double, 2>& log_lik,
                                  const CycleModel& model) {
  FfSfgTrialState next = state;
  std::array<double, 2>& lp = next.log_posterior;
  lp[0] += log_lik[0];
  lp[1] += log_lik[1];
  const double top = std::max(lp[0], lp[1]);
  if (top == -kInf) throw ModelError("observed counts have zero likelihood under both hypotheses");
  const double norm = top + std::log(std::exp(lp[0] - top) + std::exp(lp[1] - top));
  lp[0] -= norm;
  lp[1] -= norm;
  next.tentative = argmax(lp);
  next.remaining_energy_fraction =
      std::max(0.0, state.remaining_energy_fraction - model.energy_fraction(state.cycle_index));
  ++next.cycle_index;
  if (next.cycle_index == model.cycles()) next.remaining_energy_fraction = 0;
  return next;
}

}  // namespace

FfSfgTrialState bayes_update(const FfSfgTrialState& state, const CycleCounts& counts, const CycleModel& model) {
  if (state.cycle_index >= model.cycles()) throw SequencingError("all K cycles already used");
  return apply_likelihoods(state, model.log_likelihoods(state, counts), model);
}

FfSfgTrialState bayes_update(const FfSfgTrialState& state, const CycleCounts& counts, const FfSfgConfig& config,
                             const ScenarioParams& params) {
  return bayes_update(state, counts, EffectiveCoherentStateModel(params, config));
}

Hypothesis run_trial(double zeta, Hypothesis true_h, const CycleModel& model, std::mt19937_64& rng) {
  FfSfgTrialState state = FfSfgTrialState::from_priors(Priors::from_zeta(zeta));
  for (int k = 0; k < model.cycles(); ++k) {
    state = apply_likelihoods(state, model.run_cycle(state, true_h, rng).log_likelihood, model);
  }
  return state.tentative;
}

Hypothesis run_trial(double zeta, Hypothesis true_h, const FfSfgConfig& config, const ScenarioParams& params,
                     std::mt19937_64& rng) {
  return run_trial(zeta, true_h, EffectiveCoherentStateModel(params, config), rng);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t zeta_index, std::uint64_t trial_index, Hypothesis h) {
  std::uint64_t x = splitmix64(seed);
  x = splitmix64(x ^ zeta_index);
  x = splitmix64(x ^ trial_index);
  return splitmix64(x ^ static_cast<std::uint64_t>(index(h)));
}

namespace {

enum Outcome : std::uint8_t { kDecideAbsent = 0, kDecidePresent = 1, kAborted = 2 };

struct Tally {
  std::uint64_t present = 0;
  std::uint64_t valid = 0;
};

// outcomes[(z * 2 + h) * trials + t], filled in any order, read in index order.
std::vector<std::array<Tally, 2>> run_grid(std::span<const double> zeta_grid, const FfSfgConfig& config,
                                           const ScenarioParams& params, unsigned threads,
                                           std::uint64_t& aborted) {
  const EffectiveCoherentStateModel model(params, config);
  for (double z : zeta_grid) {
    if (!(z > 0) || !std::isfinite(z)) throw DomainError("zeta grid values must be finite and > 0");
  }
  const std::size_t trials = config.trials;
  std::vector<std::uint8_t> outcomes(zeta_grid.size() * 2 * trials);
  parallel_for(outcomes.size(), resolve_threads(threads), [&](std::size_t i) {
    const std::size_t t = i % trials;
    const std::size_t zh = i / trials;
    const Hypothesis h = hypothesis_from_index(static_cast<int>(zh % 2));
    const std::size_t z = zh / 2;
    std::mt19937_64 rng(trial_seed(config.seed, z, t, h));
    try {
      outcomes[i] = run_trial(zeta_grid[z], h, model, rng) == Hypothesis::present ? kDecidePresent : kDecideAbsent;
    } catch (const ModelError&) {
      outcomes[i] = kAborted;
    }
  });

  std::vector<std::array<Tally, 2>> tallies(zeta_grid.size());
  aborted = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const std::size_t zh = i / trials;
    Tally& tally = tallies[zh / 2][zh % 2];
    if (outcomes[i] == kAborted) {
      ++aborted;
      continue;
    }
    ++tally.valid;
    tally.present += outcomes[i];
  }
  return tallies;
}

}  // namespace

RocCurve estimate_roc(std::span<const double> zeta_grid, const FfSfgConfig& config, const ScenarioParams& params,
                      unsigned threads) {
  if (zeta_grid.empty()) throw DomainError("zeta grid is empty");
  config.validate();
  std::uint64_t aborted = 0;
  const auto tallies = run_grid(zeta_grid, config, params, threads, aborted);

  RocCurve curve;
  curve.metadata.receiver = "ffsfg";
  curve.metadata.params = params;
  curve.metadata.generation = {
      {"K", std::to_string(config.K)},
      {"eta", format_double(config.eta)},
      {"n_th", format_double(config.n_th)},
      {"trials", std::to_string(config.trials)},
      {"seed", std::to_string(config.seed)},
      {"nulling", std::string(to_string(config.nulling))},
      {"slicing", std::string(to_string(config.slicing))},
      {"aborted_trials", std::to_string(aborted)},
  };
  if (aborted > 0) curve.metadata.warnings.push_back(std::to_string(aborted) + " trials aborted on zero likelihood");

  for (std::size_t z = 0; z < zeta_grid.size(); ++z) {
    const Tally& f = tallies[z][0];
    const Tally& d = tallies[z][1];
    if (f.valid == 0 || d.valid == 0) throw ModelError("every trial aborted at one zeta value");
    RocPoint pt;
    pt.p_f = static_cast<double>(f.present) / static_cast<double>(f.valid);
    pt.p_d = static_cast<double>(d.present) / static_cast<double>(d.valid);
    pt.p_f_interval = wilson_interval(f.present, f.valid);
    pt.p_d_interval = wilson_interval(d.present, d.valid);
    pt.p_f_stderr = binomial_stderr(pt.p_f, f.valid);
    pt.p_d_stderr = binomial_stderr(pt.p_d, d.valid);
    pt.zeta = zeta_grid[z];
    curve.points.push_back(pt);
  }
  std::stable_sort(curve.points.begin(), curve.points.end(), [](const RocPoint& a, const RocPoint& b) {
    if (a.p_f != b.p_f) return a.p_f < b.p_f;
    if (a.p_d != b.p_d) return a.p_d < b.p_d;
    return *a.zeta > *b.zeta;
  });
  return curve;
}

ErrorEstimate estimate_error_probability(const Priors& priors, const FfSfgConfig& config,
                                         const ScenarioParams& params, unsigned threads) {
  priors.validate();
  config.validate();
  const double zeta = priors.pi0 / priors.pi1;
  std::uint64_t aborted = 0;
  const auto tallies = run_grid(std::span(&zeta, 1), config, params, threads, aborted);
  const Tally& f = tallies[0][0];
  const Tally& d = tallies[0][1];
  if (f.valid == 0 || d.valid == 0) throw ModelError("every trial aborted");
  const double p_f = static_cast<double>(f.present) / static_cast<double>(f.valid);
  const double p_m = 1 - static_cast<double>(d.present) / static_cast<double>(d.valid);
  ErrorEstimate out;
  out.value = priors.pi0 * p_f + priors.pi1 * p_m;
  out.std_error = std::sqrt(priors.pi0 * priors.pi0 * p_f * (1 - p_f) / static_cast<double>(f.valid) +
                            priors.pi1 * priors.pi1 * p_m * (1 - p_m) / static_cast<double>(d.valid));
  out.aborted = aborted;
  return out;
}

}  // namespace qi
