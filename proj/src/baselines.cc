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

#include "qi_roclab/baselines.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "qi_roclab/minimize.hpp"
#include "qi_roclab/stats.hpp"

namespace qi {

Priors Priors::from_zeta(double zeta) {
  if (!(zeta > 0) || !std::isfinite(zeta)) throw DomainError("zeta must be finite and > 0");
  return {zeta / (1 + zeta), 1 / (1 + zeta)};
}

void Priors::validate() const {
  if (!(pi0 > 0 && pi1 > 0) || std::abs(pi0 + pi1 - 1) > 1e-12) {
    throw DomainError("priors must be positive and sum to 1");
  }
}

PureStatePair PureStatePair::coherent_vs_vacuum(double alpha_sq) {
  if (!(alpha_sq >= 0)) throw DomainError("alpha_sq must be >= 0");
  return {std::exp(-alpha_sq)};
}

double homodyne_deflection(const ScenarioParams& params) {
  params.validate();
  return 2 * std::sqrt(params.M * params.kappa * params.N_S / (2 * params.N_B + 1));
}

namespace {

RocCurve make_curve(std::string receiver, std::span<const double> pf_grid) {
  require_pf_grid(pf_grid);
  RocCurve curve;
  curve.metadata.receiver = std::move(receiver);
  curve.points.reserve(pf_grid.size());
  for (double p_f : pf_grid) curve.points.push_back({.p_f = p_f});
  return curve;
}

}  // namespace

RocCurve homodyne_roc(const ScenarioParams& params, std::span<const double> pf_grid) {
  const double d = homodyne_deflection(params);
  RocCurve curve = make_curve("ci-homodyne", pf_grid);
  curve.metadata.params = params;
  for (auto& pt : curve.points) {
    const double t = normal_tail_inverse(pt.p_f);
    pt.threshold = t;
    pt.p_d = normal_tail(t - d);
  }
  return curve;
}

double homodyne_error_probability(const ScenarioParams& params, const Priors& priors) {
  priors.validate();
  const double d = homodyne_deflection(params);
  if (d == 0) return std::min(priors.pi0, priors.pi1);
  const double t = d / 2 + std::log(priors.pi0 / priors.pi1) / d;
  return priors.pi0 * normal_tail(t) + priors.pi1 * normal_tail(d - t);
}

double coherent_np_pd(double overlap_sq, double p_f) {
  if (!(overlap_sq >= 0 && overlap_sq <= 1)) throw DomainError("overlap must lie in [0, 1]");
  if (p_f >= overlap_sq) return 1.0;
  const double root = std::sqrt(p_f * overlap_sq) + std::sqrt((1 - p_f) * (1 - overlap_sq));
  return std::min(1.0, root * root);
}

RocCurve coherent_np_roc(double alpha_sq, std::span<const double> pf_grid) {
  const double x = PureStatePair::coherent_vs_vacuum(alpha_sq).overlap_sq;
  RocCurve curve = make_curve("coherent-np", pf_grid);
  for (auto& pt : curve.points) pt.p_d = coherent_np_pd(x, pt.p_f);
  return curve;
}

namespace {

// max P_D over E = l1 u u^T + l2 u' u'^T, (l1, l2) in [0, 1]^2, subject to
// P_F <= target, for the measurement axis u at angle theta. Linear in (l1, l2),
// so the optimum sits on a vertex of the feasible polygon.
double best_pd_for_axis(double theta, double overlap_sq, double target) {
  const double c = std::sqrt(overlap_sq);
  const double s = std::sqrt(1 - overlap_sq);
  const double ux = std::cos(theta), uy = std::sin(theta);
  const double a0 = ux * ux;                                  // |<u|psi0>|^2
  const double a1 = (ux * c + uy * s) * (ux * c + uy * s);    // |<u|psi1>|^2
  const auto p_f = [&](double l1, double l2) { return l1 * a0 + l2 * (1 - a0); };
  const auto p_d = [&](double l1, double l2) { return l1 * a1 + l2 * (1 - a1); };

  std::array<std::array<double, 2>, 8> cand{};
  int n = 0;
  for (double l1 : {0.0, 1.0}) {
    for (double l2 : {0.0, 1.0}) cand[n++] = {l1, l2};
  }
  if (1 - a0 > 0) {
    cand[n++] = {0.0, target / (1 - a0)};
    cand[n++] = {1.0, (target - a0) / (1 - a0)};
  }
  if (a0 > 0) {
    cand[n++] = {target / a0, 0.0};
    cand[n++] = {(target - (1 - a0)) / a0, 1.0};
  }
  double best = 0;
  for (int i = 0; i < n; ++i) {
    const auto [l1, l2] = cand[i];
    if (l1 < 0 || l1 > 1 || l2 < 0 || l2 > 1) continue;
    if (p_f(l1, l2) > target + 1e-15) continue;
    best = std::max(best, p_d(l1, l2));
  }
  return best;
}

}  // namespace

RocCurve pure_state_np_oracle(double overlap_sq, std::span<const double> pf_grid) {
  if (!(overlap_sq >= 0 && overlap_sq <= 1)) throw DomainError("overlap must lie in [0, 1]");
  RocCurve curve = make_curve("pure-state-np-oracle", pf_grid);
  constexpr int kGrid = 4000;
  const double pi = std::numbers::pi;
  for (auto& pt : curve.points) {
    const auto value = [&](double theta) { return best_pd_for_axis(theta, overlap_sq, pt.p_f); };
    int best_i = 0;
    double best = -1;
    for (int i = 0; i < kGrid; ++i) {
      const double v = value(pi * i / kGrid);
      if (v > best) best = v, best_i = i;
    }
    const double h = pi / kGrid;
    const double centre = pi * best_i / kGrid;
    const auto refined =
        brent_minimize<double>([&](double th) { return -value(th); }, centre - h, centre + h, 1e-14);
    pt.p_d = std::max(best, -refined.value);
  }
  return curve;
}

double helstrom_min_error(double alpha_sq, const Priors& priors) {
  priors.validate();
  const double x = PureStatePair::coherent_vs_vacuum(alpha_sq).overlap_sq;
  return (1 - std::sqrt(std::max(0.0, 1 - 4 * priors.pi0 * priors.pi1 * x))) / 2;
}

std::pair<double, double> helstrom_operating_point(const PureStatePair& states, const Priors& priors) {
  priors.validate();
  const double x = states.overlap_sq;
  if (!(x >= 0 && x <= 1)) throw DomainError("overlap must lie in [0, 1]");
  const Eigen::Vector2d psi0(1.0, 0.0);
  const Eigen::Vector2d psi1(std::sqrt(x), std::sqrt(1 - x));
  const Eigen::Matrix2d gamma =
      priors.pi1 * psi1 * psi1.transpose() - priors.pi0 * psi0 * psi0.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(gamma);
  Eigen::Matrix2d projector = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 2; ++i) {
    if (eig.eigenvalues()(i) >= 0) {
      projector += eig.eigenvectors().col(i) * eig.eigenvectors().col(i).transpose();
    }
  }
  return {psi0.dot(projector * psi0), psi1.dot(projector * psi1)};
}

RocCurve chance_line(std::span<const double> pf_grid) {
  if (pf_grid.empty()) throw DomainError("P_F grid is empty");
  RocCurve curve;
  curve.metadata.receiver = "chance";
  for (double p_f : pf_grid) {
    if (!(p_f >= 0 && p_f <= 1)) throw DomainError("P_F grid values must lie in [0, 1]");
    curve.points.push_back({.p_f = p_f, .p_d = p_f});
  }
  return curve;
}

}  // namespace qi
