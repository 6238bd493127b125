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

#include "qi_roclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qi_roclab/errors.hpp"

namespace qi {

double normal_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

namespace {

// Rational approximation for the lower-tail quantile (relative error ~1e-9),
// polished below with Halley steps on erfc.
double lower_quantile_guess(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - p_low) {
    const double q = std::sqrt(-2 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double normal_tail_inverse(double p) {
  if (!(p > 0 && p < 1)) throw DomainError("normal_tail_inverse: p must lie in (0, 1)");
  // Q^{-1}(p) = -Phi^{-1}(p); iterate on whichever tail keeps p small.
  const bool upper = p < 0.5;
  const double tail = upper ? p : 1 - p;
  double x = -lower_quantile_guess(tail);  // x > 0 with Q(x) ~ tail
  for (int i = 0; i < 3; ++i) {
    const double err = normal_tail(x) - tail;
    const double pdf = std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi);
    if (pdf == 0) break;
    const double u = err / pdf;
    x += u / (1 - x * u / 2);
  }
  return upper ? x : -x;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (successes > trials) throw DomainError("successes exceed trials");
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  // The interval touches the boundary exactly at 0 and n successes.
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

double binomial_stderr(double p, std::uint64_t trials) {
  if (trials == 0) return std::numeric_limits<double>::infinity();
  return std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

double poisson_log_pmf(std::uint64_t n, double mu) {
  if (n == 0) return -mu;
  if (mu == 0) return -std::numeric_limits<double>::infinity();
  const double k = static_cast<double>(n);
  return k * std::log(mu) - mu - std::lgamma(k + 1);
}

}  // namespace qi
