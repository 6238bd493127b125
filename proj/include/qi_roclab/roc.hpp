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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qi_roclab/scenario.hpp"
#include "qi_roclab/stats.hpp"

namespace qi {

struct RocPoint {
  double p_f = 0;
  double p_d = 0;
  std::optional<Interval> p_f_interval;
  std::optional<Interval> p_d_interval;
  std::optional<double> p_f_stderr;
  std::optional<double> p_d_stderr;
  std::optional<double> zeta;
  std::optional<double> threshold;
  std::optional<double> gain;
};

struct RocMetadata {
  std::string receiver;
  ScenarioParams params;
  // Generation settings (gain, K, trials, seed, ...) as ordered key/value pairs.
  std::vector<std::pair<std::string, std::string>> generation;
  std::vector<std::string> warnings;
};

/// Receiver operating characteristic: (P_F, P_D) points sorted by P_F.
struct RocCurve {
  std::vector<RocPoint> points;
  RocMetadata metadata;

  std::vector<double> p_f() const;
  std::vector<double> p_d() const;
};

/// Checks the invariants of an analytic curve: values in [0, 1], P_F strictly
/// increasing, P_D nondecreasing within `tol`. Returns an empty string when
/// the curve is valid, otherwise a description of the first violation.
std::string check_analytic_roc(const RocCurve& curve, double tol = 1e-12);

/// Invariants for a Monte Carlo curve: values in [0, 1], P_F nondecreasing,
/// and P_D nondecreasing up to `sigmas` combined standard errors.
std::string check_monte_carlo_roc(const RocCurve& curve, double sigmas = 3.0);

/// True if no three consecutive points bend upward by more than `tol`.
bool is_concave(const RocCurve& curve, double tol = 1e-9);

/// Concavity for Monte Carlo curves: no point may sit below the chord of its
/// neighbours by more than `sigmas` standard errors, with the P_F and P_D
/// errors of all three points propagated to first order.
bool is_concave_within_noise(const RocCurve& curve, double sigmas = 3.0);

/// P_D at an arbitrary P_F by linear interpolation between operating points,
/// with (0, 0) and (1, 1) as the end anchors. Interpolation is achievable by
/// randomizing between neighbouring operating points.
double interpolate_p_d(const RocCurve& curve, double p_f);

/// Standard error of the interpolated P_D (linear blend of neighbouring
/// per-point errors); zero outside the Monte Carlo points.
double interpolate_p_d_stderr(const RocCurve& curve, double p_f);

/// Validated false-alarm grid: nonempty, every value in (0, 1).
void require_pf_grid(std::span<const double> pf_grid);

std::vector<double> log_grid(double lo, double hi, int points);
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace qi
