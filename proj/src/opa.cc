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

#include "qi_roclab/opa.hpp"

#include <cmath>
#include <vector>

#include "qi_roclab/minimize.hpp"
#include "qi_roclab/stats.hpp"

namespace qi {

void OpaConfig::validate() const {
  if (!(gain > 1)) throw DomainError("OPA gain must be > 1");
  if (!(M > 0)) throw DomainError("M must be > 0");
}

Hypothesis OpaConfig::decide(double total_count) const {
  return total_count >= threshold ? Hypothesis::present : Hypothesis::absent;
}

CountStatistics opa_count_statistics(const ScenarioParams& params, double gain) {
  if (!(gain > 1)) throw DomainError("OPA gain must be > 1");
  CountStatistics out;
  for (Hypothesis h : {Hypothesis::absent, Hypothesis::present}) {
    const auto cov = opa_output_covariance(conditional_covariance<double>(params, h), gain);
    const auto moments = photon_moments<double>(cov.block<2, 2>(2, 2));
    out.mean[index(h)] = moments.mean;
    out.variance[index(h)] = moments.variance;
  }
  return out;
}

namespace {

// Count statistics in units of the h = 0 standard deviation: under h = 0 the
// standardized count is N(0, 1), under h = 1 it is N(shift, ratio^2).
struct Standardized {
  double shift;
  double ratio;
};

Standardized standardize(const ScenarioParams& params, double gain) {
  const CountStatistics st = opa_count_statistics(params, gain);
  const double sd0 = std::sqrt(params.M * st.variance[0]);
  const double sd1 = std::sqrt(params.M * st.variance[1]);
  return {params.M * (st.mean[1] - st.mean[0]) / sd0, sd1 / sd0};
}

// P(lo < X < hi) for X ~ N(mean, sd^2), computed from whichever tail is small.
double normal_interval(double lo, double hi, double mean, double sd) {
  const double a = (lo - mean) / sd, b = (hi - mean) / sd;
  if (a >= 0) return normal_tail(a) - normal_tail(b);
  if (b <= 0) return normal_tail(-b) - normal_tail(-a);
  return 1 - normal_tail(-a) - normal_tail(b);
}

}  // namespace

RocCurve opa_roc(const ScenarioParams& params, double gain, std::span<const double> pf_grid) {
  require_pf_grid(pf_grid);
  const Standardized z = standardize(params, gain);
  const CountStatistics st = opa_count_statistics(params, gain);
  RocCurve curve;
  curve.metadata.receiver = "opa";
  curve.metadata.params = params;
  if (params.M < 1e3) curve.metadata.warnings.push_back("M < 1e3: Gaussian count approximation is poor");
  for (double p_f : pf_grid) {
    const double t = normal_tail_inverse(p_f);
    RocPoint pt{.p_f = p_f, .p_d = normal_tail((t - z.shift) / z.ratio)};
    pt.threshold = params.M * st.mean[0] + std::sqrt(params.M * st.variance[0]) * t;
    pt.gain = gain;
    curve.points.push_back(pt);
  }
  return curve;
}

OpaConfig opa_np_config(const ScenarioParams& params, double gain, double p_f) {
  const CountStatistics st = opa_count_statistics(params, gain);
  const double t = normal_tail_inverse(p_f);
  return {gain, params.M * st.mean[0] + std::sqrt(params.M * st.variance[0]) * t, params.M};
}

double opa_error_probability(const ScenarioParams& params, double gain, const Priors& priors) {
  priors.validate();
  const Standardized z = standardize(params, gain);
  const double m = z.shift, r = z.ratio;
  // Decide h = 1 where a x^2 + b x + c > 0 (log posterior ratio, standardized x).
  const double a = 0.5 * (1 - 1 / (r * r));
  const double b = m / (r * r);
  const double c = std::log(priors.pi1 / priors.pi0) - std::log(r) - m * m / (2 * r * r);

  // P(decide 1) for X ~ N(mean, sd^2).
  auto decide_one = [&](double mean, double sd) -> double {
    constexpr double inf = INFINITY;
    if (std::abs(a) < 1e-300 || std::abs(a) * std::abs(c) < 1e-14 * b * b) {
      if (b == 0) return c > 0 ? 1.0 : 0.0;
      const double root = -c / b;
      return b > 0 ? normal_interval(root, inf, mean, sd) : normal_interval(-inf, root, mean, sd);
    }
    const double disc = b * b - 4 * a * c;
    if (disc <= 0) return a > 0 ? 1.0 : 0.0;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double r1 = q / a, r2 = c / q;
    if (r1 > r2) std::swap(r1, r2);
    if (a > 0) return normal_interval(-inf, r1, mean, sd) + normal_interval(r2, inf, mean, sd);
    return normal_interval(r1, r2, mean, sd);
  };
  const double p_f = decide_one(0, 1);
  const double p_d = decide_one(m, r);
  return priors.pi0 * p_f + priors.pi1 * (1 - p_d);
}

double opa_error_exponent(const ScenarioParams& params, double gain) {
  const CountStatistics st = opa_count_statistics(params, gain);
  const double gap = st.mean[1] - st.mean[0];
  const double spread = std::sqrt(st.variance[0]) + std::sqrt(st.variance[1]);
  return gap * gap / (2 * spread * spread);
}

GainOptimum opa_optimize_gain(const ScenarioParams& params, const OpaObjective& objective,
                              const GainSearch& search) {
  params.validate();
  if (!(search.bracket > 0) || !(search.tolerance > 0) || search.scan_points < 3) {
    throw DomainError("invalid gain search settings");
  }
  if (objective.kind == OpaObjective::Kind::error_probability) objective.priors.validate();
  if (objective.kind == OpaObjective::Kind::detection_at_pf &&
      !(objective.p_f > 0 && objective.p_f < 1)) {
    throw DomainError("target P_F must lie in (0, 1)");
  }

  // Minimized internally; detection probability enters with a minus sign.
  auto cost = [&](double excess) {
    const double gain = 1 + excess;
    if (objective.kind == OpaObjective::Kind::error_probability) {
      return opa_error_probability(params, gain, objective.priors);
    }
    const Standardized z = standardize(params, gain);
    return -normal_tail((normal_tail_inverse(objective.p_f) - z.shift) / z.ratio);
  };
  auto report = [&](double c) { return objective.kind == OpaObjective::Kind::error_probability ? c : -c; };

  GainOptimum out;
  if (cross_correlation(params) == 0) {
    out.degenerate = true;
    out.gain = 1 + search.bracket / 2;
    out.objective = report(cost(search.bracket / 2));
    return out;
  }

  const std::vector<double> scan = log_grid(search.bracket * 1e-8, search.bracket, search.scan_points);
  std::vector<double> values(scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) values[i] = cost(scan[i]);

  std::size_t best = 0;
  int local_minima = 0;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (values[i] < values[best]) best = i;
    const double left = i > 0 ? values[i - 1] : INFINITY;
    const double right = i + 1 < scan.size() ? values[i + 1] : INFINITY;
    const double slack = 1e-12 * std::abs(values[i]);
    if (values[i] < left - slack && values[i] < right - slack) ++local_minima;
  }
  out.multistart = local_minima > 1;

  const double lo = best > 0 ? scan[best - 1] : 0.0;
  const double hi = best + 1 < scan.size() ? scan[best + 1] : scan[best];
  const auto refined = brent_minimize<double>(cost, lo, hi, search.tolerance);
  double excess = scan[best], value = values[best];
  if (refined.value <= value) excess = refined.x, value = refined.value;

  out.gain = 1 + excess;
  out.objective = report(value);
  out.at_bracket_edge = search.bracket - excess <= 10 * search.tolerance;
  return out;
}

RocCurve opa_roc_per_point(const ScenarioParams& params, std::span<const double> pf_grid,
                           const GainSearch& search) {
  require_pf_grid(pf_grid);
  RocCurve curve;
  curve.metadata.receiver = "opa";
  curve.metadata.params = params;
  for (double p_f : pf_grid) {
    const GainOptimum opt = opa_optimize_gain(params, OpaObjective::detection_at(p_f), search);
    RocPoint pt = opa_roc(params, opt.gain, std::array{p_f}).points.front();
    curve.points.push_back(pt);
  }
  return curve;
}

}  // namespace qi
