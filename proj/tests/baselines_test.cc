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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gtest/gtest.h"
#include "qi_roclab/errors.hpp"

namespace {

using qi::ScenarioParams;

ScenarioParams reference() { return {}; }

constexpr double kAlphaSq = 1.5811388300841898;  // M kappa N_S / N_B for the default scenario

// Upper tail of N(mean, sd^2) above t by composite Simpson on the density.
double gaussian_tail_quadrature(double t, double mean, double sd) {
  const double hi = mean + 14 * sd;
  if (t >= hi) return 0;
  const int n = 20000;
  const double h = (hi - t) / n;
  const auto pdf = [&](double x) {
    const double z = (x - mean) / sd;
    return std::exp(-z * z / 2) / (sd * std::sqrt(2 * std::numbers::pi));
  };
  double sum = pdf(t) + pdf(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * pdf(t + i * h);
  return sum * h / 3;
}

// Likelihood-ratio test on the summed x quadratures, thresholded by bisection.
double homodyne_lrt_oracle(const ScenarioParams& p, double p_f) {
  const double mean = p.M * std::sqrt(p.kappa * p.N_S);
  const double sd = std::sqrt(p.M * (2 * p.N_B + 1) / 4);
  double lo = -14 * sd, hi = 14 * sd;
  for (int i = 0; i < 100; ++i) {
    const double mid = (lo + hi) / 2;
    (gaussian_tail_quadrature(mid, 0, sd) > p_f ? lo : hi) = mid;
  }
  return gaussian_tail_quadrature((lo + hi) / 2, mean, sd);
}

// Any 0 <= E <= I on the span of {|0>, |psi1>} gives a feasible (P_F, P_D).
std::pair<double, double> random_measurement(double x, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  const double theta = std::numbers::pi * u(rng);
  const Eigen::Vector2d e0(std::cos(theta), std::sin(theta));
  const Eigen::Vector2d e1(-std::sin(theta), std::cos(theta));
  const Eigen::Matrix2d E = u(rng) * e0 * e0.transpose() + u(rng) * e1 * e1.transpose();
  const Eigen::Vector2d psi0(1, 0), psi1(std::sqrt(x), std::sqrt(1 - x));
  return {psi0.dot(E * psi0), psi1.dot(E * psi1)};
}

}  // namespace

TEST(Homodyne, Deflection) {
  EXPECT_NEAR(qi::homodyne_deflection(reference()), 1.756459, 1e-6);
  EXPECT_NEAR(qi::homodyne_deflection(reference()), 2 * std::sqrt(std::pow(10.0, 7.5) * 1e-6 / 41), 1e-14);
  ScenarioParams four = reference();
  four.M *= 4;
  EXPECT_NEAR(qi::homodyne_deflection(four), 2 * qi::homodyne_deflection(reference()), 1e-12);
  ScenarioParams blind = reference();
  blind.kappa = 0;
  EXPECT_EQ(qi::homodyne_deflection(blind), 0);
}

TEST(Homodyne, MatchesLikelihoodRatioOracle) {
  const std::vector<double> grid{0.01, 0.1, 0.3};
  for (const ScenarioParams& p : {reference(), ScenarioParams{.M = 5, .N_S = 0.3, .kappa = 0.4, .N_B = 2}}) {
    const qi::RocCurve roc = qi::homodyne_roc(p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_NEAR(roc.points[i].p_d, homodyne_lrt_oracle(p, grid[i]), 1e-4) << grid[i];
    }
  }
}

TEST(Homodyne, RocValues) {
  const std::vector<double> grid{0.1, 0.999999};
  const qi::RocCurve roc = qi::homodyne_roc(reference(), grid);
  EXPECT_NEAR(roc.points[0].p_d, 0.68258, 1e-5);
  EXPECT_GT(roc.points[1].p_d, 0.99999);

  ScenarioParams blind = reference();
  blind.kappa = 0;
  const auto pf = qi::log_grid(1e-3, 0.999, 50);
  for (const auto& pt : qi::homodyne_roc(blind, pf).points) EXPECT_NEAR(pt.p_d, pt.p_f, 1e-12);
}

TEST(CoherentNp, ClosedFormValues) {
  const double x = std::exp(-kAlphaSq);
  EXPECT_NEAR(x, 0.205741, 1e-6);
  EXPECT_NEAR(qi::coherent_np_pd(x, 0.0), 1 - x, 1e-15);
  EXPECT_NEAR(qi::coherent_np_pd(x, 0.05), 0.941038, 1e-6);
  EXPECT_NEAR(qi::coherent_np_pd(1.0, 0.3), 0.3, 1e-15);
  EXPECT_NEAR(qi::coherent_np_pd(0.0, 0.0), 1.0, 1e-15);
  EXPECT_EQ(qi::coherent_np_pd(x, 0.5), 1.0);
}

TEST(CoherentNp, ContinuousAtThreshold) {
  const double x = std::exp(-kAlphaSq);
  EXPECT_NEAR(qi::coherent_np_pd(x, x), 1.0, 1e-12);
  EXPECT_NEAR(qi::coherent_np_pd(x, x * (1 - 1e-9)), 1.0, 1e-6);
}

TEST(CoherentNp, MatchesBruteForceOracle) {
  const std::vector<double> grid{0.001, 0.01, 0.05, 0.1, 0.2, 0.3, 0.6, 0.9};
  for (double x : {0.0, std::exp(-kAlphaSq), 0.5, 1.0}) {
    const qi::RocCurve oracle = qi::pure_state_np_oracle(x, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_NEAR(oracle.points[i].p_d, qi::coherent_np_pd(x, grid[i]), 1e-6) << x << " " << grid[i];
    }
  }
}

TEST(CoherentNp, NoMeasurementBeatsTheCurve) {
  std::mt19937_64 rng(3);
  for (double x : {0.05, std::exp(-kAlphaSq), 0.7}) {
    for (int i = 0; i < 20000; ++i) {
      const auto [pf, pd] = random_measurement(x, rng);
      ASSERT_LE(pd, qi::coherent_np_pd(x, std::min(1.0, pf)) + 1e-12) << x << " " << pf;
    }
  }
}

TEST(CoherentNp, DominatesHomodyne) {
  const auto grid = qi::log_grid(1e-3, 0.2, 40);
  const qi::RocCurve np = qi::coherent_np_roc(kAlphaSq, grid);
  const qi::RocCurve hd = qi::homodyne_roc(reference(), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_GT(np.points[i].p_d, hd.points[i].p_d) << grid[i];
}

TEST(Helstrom, MinimumError) {
  EXPECT_NEAR(qi::helstrom_min_error(kAlphaSq, {}), 0.0543939, 1e-7);
  EXPECT_DOUBLE_EQ(qi::helstrom_min_error(0, {}), 0.5);
  EXPECT_NEAR(qi::helstrom_min_error(kAlphaSq, {1 - 1e-12, 1e-12}), 0, 1e-11);
  EXPECT_THROW(qi::helstrom_min_error(kAlphaSq, {1, 0}), qi::DomainError);
  EXPECT_THROW(qi::helstrom_min_error(kAlphaSq, {0.6, 0.6}), qi::DomainError);
}

TEST(Helstrom, TraceNormOracle) {
  for (double x : {0.01, 0.2, 0.8}) {
    for (double pi1 : {0.2, 0.5, 0.9}) {
      const Eigen::Vector2d psi0(1, 0), psi1(std::sqrt(x), std::sqrt(1 - x));
      const Eigen::Matrix2d gamma = pi1 * psi1 * psi1.transpose() - (1 - pi1) * psi0 * psi0.transpose();
      const double trace_norm =
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(gamma).eigenvalues().cwiseAbs().sum();
      EXPECT_NEAR(qi::helstrom_min_error(-std::log(x), {1 - pi1, pi1}), (1 - trace_norm) / 2, 1e-14);
    }
  }
}

TEST(Helstrom, BayesMatchesNeymanPearson) {
  const double x = std::exp(-kAlphaSq);
  for (double pi1 : {0.5, 0.3, 0.8}) {
    const qi::Priors pr{1 - pi1, pi1};
    const auto [pf, pd] = qi::helstrom_operating_point({x}, pr);
    EXPECT_NEAR(pr.pi0 * pf + pr.pi1 * (1 - pd), qi::helstrom_min_error(kAlphaSq, pr), 1e-12);
    EXPECT_NEAR(pd, qi::coherent_np_pd(x, pf), 1e-9);
  }
  // Minimizing over a dense NP curve reaches the Helstrom bound.
  const auto grid = qi::linear_grid(1e-6, x, 200001);
  double best = 1;
  for (const auto& pt : qi::coherent_np_roc(kAlphaSq, grid).points) best = std::min(best, 0.5 * pt.p_f + 0.5 * (1 - pt.p_d));
  EXPECT_NEAR(best, qi::helstrom_min_error(kAlphaSq, {}), 1e-6);
}

TEST(Baselines, CurvesAreConcaveAndValid) {
  const auto grid = qi::log_grid(1e-3, 1 - 1e-3, 50);
  for (const qi::RocCurve& c : {qi::homodyne_roc(reference(), grid), qi::coherent_np_roc(kAlphaSq, grid), qi::chance_line(grid)}) {
    EXPECT_EQ(qi::check_analytic_roc(c), "") << c.metadata.receiver;
    EXPECT_TRUE(qi::is_concave(c)) << c.metadata.receiver;
  }
}

TEST(Baselines, ChanceLine) {
  const std::vector<double> grid{0.0, 0.1, 1.0};
  const qi::RocCurve c = qi::chance_line(grid);
  for (const auto& pt : c.points) EXPECT_EQ(pt.p_d, pt.p_f);
  EXPECT_EQ(c.metadata.receiver, "chance");
}

TEST(Priors, FromZeta) {
  const qi::Priors p = qi::Priors::from_zeta(3);
  EXPECT_DOUBLE_EQ(p.pi0, 0.75);
  EXPECT_DOUBLE_EQ(p.pi1, 0.25);
  EXPECT_DOUBLE_EQ(qi::Priors::from_zeta(1).pi0, 0.5);
  EXPECT_THROW(qi::Priors::from_zeta(0), qi::DomainError);
  EXPECT_THROW(qi::Priors::from_zeta(-1), qi::DomainError);
}

TEST(Baselines, RejectsBadGrid) {
  const std::vector<double> grid{0.1, 1.5};
  EXPECT_THROW(qi::homodyne_roc(reference(), grid), qi::DomainError);
  EXPECT_THROW(qi::coherent_np_roc(-1, std::vector<double>{0.1}), qi::DomainError);
}
