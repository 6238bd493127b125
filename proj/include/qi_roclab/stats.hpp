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

namespace qi {

/// Upper-tail standard normal probability Q(x) = P(Z > x).
double normal_tail(double x);

/// Inverse of normal_tail on (0, 1). Throws DomainError outside (0, 1).
double normal_tail_inverse(double p);

inline constexpr double kWilsonZ95 = 1.959963984540054;

struct Interval {
  double lo;
  double hi;
};

/// Wilson score interval for `successes` out of `trials` Bernoulli draws.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ95);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::uint64_t trials);

/// ln Poisson(n; mu). Returns -inf for mu = 0 and n > 0.
double poisson_log_pmf(std::uint64_t n, double mu);

}  // namespace qi
