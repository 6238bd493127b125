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

#include "qi_roclab/scenario.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"

namespace {

using qi::Hypothesis;
using qi::Matrix4;
using qi::ScenarioParams;

ScenarioParams reference() { return {}; }

// Smallest symplectic eigenvalue of a standard-form covariance
// [[A I, C Z], [C Z, B I]] written in vacuum-variance-1 units.
double standard_form_nu_min(double A, double B, double C) {
  const double s = std::sqrt((A + B) * (A + B) - 4 * C * C);
  return (s - std::abs(A - B)) / 2;
}

}  // namespace

TEST(ConditionalCovariance, AbsentAtReference) {
  const Matrix4<double> v = qi::conditional_covariance<double>(reference(), Hypothesis::absent);
  Eigen::Vector4d diag(10.25, 10.25, 0.25005, 0.25005);
  EXPECT_LT((v.diagonal() - diag).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(v(0, 2), 0.0);
  EXPECT_EQ(v(1, 3), 0.0);
  EXPECT_EQ((v - Matrix4<double>(v.diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ConditionalCovariance, PresentAtReference) {
  const Matrix4<double> v = qi::conditional_covariance<double>(reference(), Hypothesis::present);
  EXPECT_NEAR(v(0, 0), 10.25, 1e-15);
  EXPECT_NEAR(v(2, 2), 0.25005, 1e-15);
  EXPECT_NEAR(v(0, 2), 5.00025e-4, 1e-12);
  EXPECT_NEAR(v(1, 3), -5.00025e-4, 1e-12);
  EXPECT_EQ(v(0, 2), v(2, 0));
  EXPECT_EQ(v(1, 3), v(3, 1));
  EXPECT_EQ(v(0, 3), 0.0);
  EXPECT_EQ(v(1, 2), 0.0);
}

TEST(ConditionalCovariance, ZeroKappaMatchesAbsent) {
  ScenarioParams p{.M = 10, .N_S = 0.3, .kappa = 0, .N_B = 2};
  EXPECT_EQ(qi::conditional_covariance<double>(p, Hypothesis::present),
            qi::conditional_covariance<double>(p, Hypothesis::absent));
}

TEST(ConditionalCovariance, ExactSignalVariance) {
  ScenarioParams p = reference();
  p.signal_variance = qi::SignalVariance::exact;
  const auto v1 = qi::conditional_covariance<double>(p, Hypothesis::present);
  const auto v0 = qi::conditional_covariance<double>(p, Hypothesis::absent);
  EXPECT_NEAR(v1(0, 0), (2 * 0.01 * 1e-4 + 41) / 4, 1e-15);
  EXPECT_NEAR(v0(0, 0), 10.25, 1e-15);
}

TEST(ConditionalCovariance, RejectsInvalidParams) {
  for (ScenarioParams p : {ScenarioParams{.M = 0}, ScenarioParams{.N_S = -1}, ScenarioParams{.kappa = 1.5},
                           ScenarioParams{.N_B = NAN}, ScenarioParams{.M = INFINITY}}) {
    EXPECT_THROW(qi::conditional_covariance<double>(p, Hypothesis::absent), qi::DomainError);
  }
}

TEST(CrossCorrelation, Examples) {
  EXPECT_NEAR(qi::cross_correlation(reference()), 1.00005e-3, 5e-9);
  EXPECT_DOUBLE_EQ(qi::cross_correlation(reference()), std::sqrt(0.01 * 1e-4 * (1 + 1e-4)));
  EXPECT_EQ(qi::cross_correlation({.N_S = 0.4, .kappa = 0}), 0.0);
  EXPECT_NEAR(qi::cross_correlation({.N_S = 1, .kappa = 1}), std::sqrt(2.0), 1e-15);
}

TEST(CrossCorrelation, MonotoneInKappaAndSignal) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const double ns = 2 * u(rng), k = u(rng), dn = u(rng), dk = (1 - k) * u(rng);
    EXPECT_LE(qi::cross_correlation({.N_S = ns, .kappa = k}), qi::cross_correlation({.N_S = ns + dn, .kappa = k}));
    EXPECT_LE(qi::cross_correlation({.N_S = ns, .kappa = k}), qi::cross_correlation({.N_S = ns, .kappa = k + dk}));
  }
}

TEST(Physicality, Examples) {
  EXPECT_TRUE(qi::physicality_check<double>(Matrix4<double>::Identity() / 4));
  EXPECT_TRUE(qi::physicality_check(qi::conditional_covariance<double>(reference(), Hypothesis::absent)));
  EXPECT_TRUE(qi::physicality_check(qi::conditional_covariance<double>(reference(), Hypothesis::present)));
  Matrix4<double> bad = Matrix4<double>::Constant(10);
  bad.diagonal().setConstant(0.25);
  EXPECT_FALSE(qi::physicality_check(bad));
  Matrix4<double> squeezed_too_far = Matrix4<double>::Identity() / 4;
  squeezed_too_far(0, 0) = 0.1;
  EXPECT_FALSE(qi::physicality_check(squeezed_too_far));
}

TEST(Physicality, RejectsAsymmetricInput) {
  Matrix4<double> v = Matrix4<double>::Identity() / 4;
  v(0, 1) = 0.1;
  EXPECT_THROW(qi::physicality_check(v), qi::ShapeError);
}

TEST(Physicality, RandomDraws) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  int approximate_unphysical = 0;
  for (int i = 0; i < 1000; ++i) {
    ScenarioParams p{.M = 1, .N_S = std::pow(10.0, -6 + 7 * u(rng)), .kappa = u(rng),
                     .N_B = i % 10 == 0 ? 0.0 : std::pow(10.0, -3 + 6 * u(rng))};
    for (Hypothesis h : {Hypothesis::absent, Hypothesis::present}) {
      p.signal_variance = qi::SignalVariance::exact;
      ASSERT_TRUE(qi::physicality_check(qi::conditional_covariance<double>(p, h))) << i;

      p.signal_variance = qi::SignalVariance::approximate;
      const Matrix4<double> v = 4 * qi::conditional_covariance<double>(p, h);
      const double nu = standard_form_nu_min(v(0, 0), v(2, 2), v(0, 2));
      if (std::abs(nu - 1) < 1e-9) continue;
      EXPECT_EQ(qi::physicality_check<double>(v / 4), nu > 1) << i;
      approximate_unphysical += nu < 1;
    }
  }
  // The approximate form is only an approximation; some draws must probe its edge.
  EXPECT_GT(approximate_unphysical, 0);
}

TEST(Physicality, ApproximateFormPhysicalInWeakSignalRegime) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    ScenarioParams p{.N_S = std::pow(10.0, -6 + 4 * u(rng)), .kappa = u(rng), .N_B = std::pow(10.0, -1 + 3 * u(rng))};
    for (Hypothesis h : {Hypothesis::absent, Hypothesis::present}) {
      EXPECT_TRUE(qi::physicality_check(qi::conditional_covariance<double>(p, h)));
    }
  }
}

TEST(ConditionalCovariance, AbsentIsPresentWithoutCrossBlock) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    ScenarioParams p{.N_S = u(rng), .kappa = u(rng), .N_B = 10 * u(rng)};
    Matrix4<double> v1 = qi::conditional_covariance<double>(p, Hypothesis::present);
    v1.block<2, 2>(0, 2).setZero();
    v1.block<2, 2>(2, 0).setZero();
    EXPECT_EQ(v1, qi::conditional_covariance<double>(p, Hypothesis::absent));
  }
}

TEST(Regime, ReferenceFlags) {
  EXPECT_TRUE(qi::weak_signal(reference()));
  EXPECT_TRUE(qi::bright_noise(reference()));
  EXPECT_TRUE(qi::weak_return(reference()));
  EXPECT_FALSE(qi::bright_noise(reference(), {.bright_noise = 50}));
}

TEST(ScenarioIo, RoundTripIsBitExact) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    ScenarioParams p{.M = std::exp(20 * u(rng)), .N_S = u(rng) / 3, .kappa = u(rng), .N_B = 100 * u(rng)};
    if (i % 2) p.signal_variance = qi::SignalVariance::exact;
    std::stringstream ss;
    qi::write_scenario(ss, p);
    EXPECT_EQ(qi::read_scenario(ss), p);
  }
}

TEST(ScenarioIo, ParsesCommentsAndPowers) {
  std::istringstream in("# reference\nM = 10^7.5\nN_S = 1e-4  # per mode\nkappa=0.01\n\nN_B = 20\n");
  const ScenarioParams p = qi::read_scenario(in);
  EXPECT_DOUBLE_EQ(p.M, std::pow(10.0, 7.5));
  EXPECT_EQ(p.N_S, 1e-4);
  EXPECT_EQ(p.kappa, 0.01);
  EXPECT_EQ(p.N_B, 20.0);
}

TEST(ScenarioIo, RejectsBadInput) {
  std::istringstream unknown("M = 1\nNs = 2\n");
  EXPECT_THROW(qi::read_scenario(unknown), qi::DomainError);
  std::istringstream no_equals("M 1\n");
  EXPECT_THROW(qi::read_scenario(no_equals), qi::DomainError);
  std::istringstream bad_number("kappa = lots\n");
  EXPECT_THROW(qi::read_scenario(bad_number), qi::DomainError);
  std::istringstream out_of_range("kappa = 2\n");
  EXPECT_THROW(qi::read_scenario(out_of_range), qi::DomainError);
}

TEST(HypothesisHelpers, IndexAndOther) {
  EXPECT_EQ(qi::index(Hypothesis::absent), 0);
  EXPECT_EQ(qi::index(Hypothesis::present), 1);
  EXPECT_EQ(qi::other(Hypothesis::absent), Hypothesis::present);
  EXPECT_EQ(qi::hypothesis_from_index(1), Hypothesis::present);
}
