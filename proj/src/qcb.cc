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

#include "qi_roclab/qcb.hpp"

#include <cmath>

#include "qi_roclab/gaussian.hpp"
#include "qi_roclab/minimize.hpp"
#include "qi_roclab/parallel.hpp"

namespace qi {

long double s_log_overlap(const ScenarioParams& params, long double s) {
  const auto cov0 = conditional_covariance<long double>(params, Hypothesis::absent);
  const auto cov1 = conditional_covariance<long double>(params, Hypothesis::present);
  return gaussian_log_overlap(cov0, cov1, s);
}

double s_overlap(const ScenarioParams& params, double s) {
  return static_cast<double>(std::exp(s_log_overlap(params, s)));
}

QcbResult qcb_exponent(const ScenarioParams& params, double s_tolerance) {
  params.validate();
  if (params.kappa * params.N_S == 0) return {0.5, 1.0, 0.0};

  const auto cov0 = conditional_covariance<long double>(params, Hypothesis::absent);
  const auto cov1 = conditional_covariance<long double>(params, Hypothesis::present);
  if (!physicality_check(cov0) || !physicality_check(cov1)) {
    throw StateError("conditional covariance is unphysical for these parameters");
  }
  auto objective = [&](long double s) { return gaussian_log_overlap(cov0, cov1, s); };
  const auto best = brent_minimize<long double>(objective, 0.0L, 1.0L, s_tolerance);
  const long double log_min = std::min(best.value, 0.0L);
  return {static_cast<double>(best.x), static_cast<double>(std::exp(log_min)),
          static_cast<double>(-log_min)};
}

double qcb_asymptote(const ScenarioParams& params) {
  params.validate();
  if (params.N_B == 0) throw DomainError("qcb_asymptote requires N_B > 0");
  return params.kappa * params.N_S / params.N_B;
}

std::vector<QcbSweepRow> qcb_normalization_sweep(std::span<const double> N_S_grid,
                                                 std::span<const double> N_B_list,
                                                 double kappa, unsigned threads) {
  if (N_S_grid.empty() || N_B_list.empty()) throw DomainError("QCB sweep grids must be nonempty");
  std::vector<QcbSweepRow> rows(N_S_grid.size() * N_B_list.size());
  for (std::size_t b = 0; b < N_B_list.size(); ++b) {
    for (std::size_t s = 0; s < N_S_grid.size(); ++s) {
      auto& row = rows[b * N_S_grid.size() + s];
      row.N_S = N_S_grid[s];
      row.N_B = N_B_list[b];
      row.kappa = kappa;
      ScenarioParams p;
      p.N_S = row.N_S, p.N_B = row.N_B, p.kappa = kappa;
      p.validate();
      if (p.N_B == 0) throw DomainError("QCB sweep requires N_B > 0");
    }
  }
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    auto& row = rows[i];
    ScenarioParams p;
    p.N_S = row.N_S, p.N_B = row.N_B, p.kappa = row.kappa;
    row.qcb = qcb_exponent(p);
    row.asymptote = qcb_asymptote(p);
    if (row.asymptote > 0) row.ratio = row.qcb.exponent / row.asymptote;
  });
  return rows;
}

}  // namespace qi
