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

#include <optional>
#include <span>
#include <vector>

#include "qi_roclab/scenario.hpp"

namespace qi {

struct QcbResult {
  double s_star = 0.5;  // minimizer of the s-overlap on [0, 1]
  double overlap = 1;   // min_s Tr(rho0^s rho1^(1-s))
  double exponent = 0;  // -ln(overlap), per mode pair
};

/// Tr(rho0^s rho1^(1-s)) for the single mode-pair conditional states.
double s_overlap(const ScenarioParams& params, double s);

/// ln of s_overlap, computed in extended precision. Use this for tiny
/// exponents where 1 - overlap is below double resolution.
long double s_log_overlap(const ScenarioParams& params, long double s);

inline constexpr double kQcbTolerance = 1e-6;

/// Chernoff exponent -ln min_s Tr(rho0^s rho1^(1-s)), minimized over s to
/// within `s_tolerance`. kappa N_S = 0 short-circuits to exponent 0.
QcbResult qcb_exponent(const ScenarioParams& params, double s_tolerance = kQcbTolerance);

/// kappa N_S / N_B. Throws DomainError for N_B = 0.
double qcb_asymptote(const ScenarioParams& params);

struct QcbSweepRow {
  double N_S;
  double N_B;
  double kappa;
  QcbResult qcb;
  double asymptote;
  std::optional<double> ratio;  // empty when the asymptote is zero
};

/// Exponent / asymptote on the N_S x N_B grid (row order: N_B outer, N_S
/// inner). Rows are evaluated on `threads` workers; output order is fixed.
std::vector<QcbSweepRow> qcb_normalization_sweep(std::span<const double> N_S_grid,
                                                 std::span<const double> N_B_list,
                                                 double kappa, unsigned threads = 1);

}  // namespace qi
