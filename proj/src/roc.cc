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

#include "qi_roclab/roc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qi {

std::vector<double> RocCurve::p_f() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.p_f);
  return out;
}

std::vector<double> RocCurve::p_d() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.p_d);
  return out;
}

namespace {

std::string describe(std::size_t i, const char* what) {
  std::ostringstream os;
  os << "point " << i << ": " << what;
  return os.str();
}

bool in_unit(double x) { return x >= 0 && x <= 1; }

double stderr_or_zero(const std::optional<double>& s) { return s.value_or(0.0); }

}  // namespace

std::string check_analytic_roc(const RocCurve& curve, double tol) {
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!in_unit(pts[i].p_f) || !in_unit(pts[i].p_d)) return describe(i, "value outside [0, 1]");
    if (i == 0) continue;
    if (!(pts[i].p_f > pts[i - 1].p_f)) return describe(i, "P_F not strictly increasing");
    if (pts[i].p_d < pts[i - 1].p_d - tol) return describe(i, "P_D decreasing");
  }
  return {};
}

std::string check_monte_carlo_roc(const RocCurve& curve, double sigmas) {
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!in_unit(pts[i].p_f) || !in_unit(pts[i].p_d)) return describe(i, "value outside [0, 1]");
    if (i == 0) continue;
    if (pts[i].p_f < pts[i - 1].p_f) return describe(i, "P_F decreasing");
    const double se = std::hypot(stderr_or_zero(pts[i].p_d_stderr), stderr_or_zero(pts[i - 1].p_d_stderr));
    if (pts[i].p_d < pts[i - 1].p_d - sigmas * se - 1e-12) return describe(i, "P_D decreasing beyond noise");
  }
  return {};
}

bool is_concave(const RocCurve& curve, double tol) {
  const auto& pts = curve.points;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double x0 = pts[i - 1].p_f, x1 = pts[i].p_f, x2 = pts[i + 1].p_f;
    if (x2 <= x0) continue;
    const double chord = pts[i - 1].p_d + (pts[i + 1].p_d - pts[i - 1].p_d) * (x1 - x0) / (x2 - x0);
    if (pts[i].p_d < chord - tol) return false;
  }
  return true;
}

bool is_concave_within_noise(const RocCurve& curve, double sigmas) {
  const auto& pts = curve.points;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double x0 = pts[i - 1].p_f, x1 = pts[i].p_f, x2 = pts[i + 1].p_f;
    if (!(x0 < x1 && x1 < x2)) continue;
    const double t = (x1 - x0) / (x2 - x0);
    const double m = (pts[i + 1].p_d - pts[i - 1].p_d) / (x2 - x0);
    const double chord = (1 - t) * pts[i - 1].p_d + t * pts[i + 1].p_d;
    const double d0 = stderr_or_zero(pts[i - 1].p_d_stderr), d1 = stderr_or_zero(pts[i].p_d_stderr),
                 d2 = stderr_or_zero(pts[i + 1].p_d_stderr);
    const double f0 = stderr_or_zero(pts[i - 1].p_f_stderr), f1 = stderr_or_zero(pts[i].p_f_stderr),
                 f2 = stderr_or_zero(pts[i + 1].p_f_stderr);
    // First-order propagation of both coordinates' noise into p_d[i] - chord.
    const double var = d1 * d1 + (1 - t) * (1 - t) * d0 * d0 + t * t * d2 * d2 +
                       m * m * (f1 * f1 + (1 - t) * (1 - t) * f0 * f0 + t * t * f2 * f2);
    if (pts[i].p_d < chord - sigmas * std::sqrt(var) - 1e-12) return false;
  }
  return true;
}

namespace {

// Anchored, P_F-sorted copy of the curve's (P_F, P_D, stderr) triples.
struct Anchored {
  std::vector<double> x, y, se;
};

Anchored anchored(const RocCurve& curve) {
  Anchored a;
  a.x.push_back(0.0), a.y.push_back(0.0), a.se.push_back(0.0);
  for (const auto& p : curve.points) {
    a.x.push_back(p.p_f), a.y.push_back(p.p_d), a.se.push_back(stderr_or_zero(p.p_d_stderr));
  }
  a.x.push_back(1.0), a.y.push_back(1.0), a.se.push_back(0.0);
  return a;
}

template <typename Pick>
double interpolate(const RocCurve& curve, double p_f, Pick pick) {
  const Anchored a = anchored(curve);
  const auto it = std::upper_bound(a.x.begin(), a.x.end(), p_f);
  if (it == a.x.end()) return pick(a, a.x.size() - 1, a.x.size() - 1, 0.0);
  std::size_t hi = static_cast<std::size_t>(it - a.x.begin());
  for (std::size_t j = hi + 1; j < a.x.size() && a.x[j] == a.x[hi]; ++j) {
    if (a.y[j] > a.y[hi]) hi = j;
  }
  std::size_t lo = static_cast<std::size_t>(it - a.x.begin()) - 1;
  // At tied P_F the largest P_D is the achievable one.
  std::size_t best = lo;
  while (lo > 0 && a.x[lo - 1] == a.x[best]) {
    --lo;
    if (a.y[lo] > a.y[best]) best = lo;
  }
  const double t = a.x[hi] > a.x[best] ? (p_f - a.x[best]) / (a.x[hi] - a.x[best]) : 0.0;
  return pick(a, best, hi, t);
}

}  // namespace

double interpolate_p_d(const RocCurve& curve, double p_f) {
  return interpolate(curve, p_f, [](const Anchored& a, std::size_t i, std::size_t j, double t) {
    return a.y[i] + t * (a.y[j] - a.y[i]);
  });
}

double interpolate_p_d_stderr(const RocCurve& curve, double p_f) {
  return interpolate(curve, p_f, [](const Anchored& a, std::size_t i, std::size_t j, double t) {
    return (1 - t) * a.se[i] + t * a.se[j];
  });
}

void require_pf_grid(std::span<const double> pf_grid) {
  if (pf_grid.empty()) throw DomainError("P_F grid is empty");
  for (double p : pf_grid) {
    if (!(p > 0 && p < 1)) throw DomainError("P_F grid values must lie in (0, 1)");
  }
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (points < 1 || !(lo > 0) || !(hi >= lo)) throw DomainError("invalid log grid");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < points; ++i) out[i] = std::exp(a + (b - a) * i / (points - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  if (points < 1 || !(hi >= lo)) throw DomainError("invalid linear grid");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) out[i] = lo + (hi - lo) * i / (points - 1);
  return out;
}

}  // namespace qi
