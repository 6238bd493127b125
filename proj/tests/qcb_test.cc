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
#include <random>

#include "gtest/gtest.h"
#include "qi_roclab/errors.hpp"
#include "qi_roclab/roc.hpp"

namespace {

using qi::ScenarioParams;

ScenarioParams small_noise() { return {.M = 1, .N_S = 0.1, .kappa = 0.1, .N_B = 1}; }

}  // namespace

TEST(SOverlap, EndpointsAndIdenticalStates) {
  for (double s : {0.0, 1.0}) EXPECT_EQ(qi::s_overlap(small_noise(), s), 1.0);
  ScenarioParams blind = small_noise();
  blind.kappa = 0;
  for (double s : {0.1, 0.5, 0.9}) EXPECT_NEAR(qi::s_overlap(blind, s), 1.0, 1e-14);
}

TEST(SOverlap, InUnitIntervalAndContinuous) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50; ++i) {
    ScenarioParams p{.M = 1, .N_S = std::pow(10.0, -4 + 4 * u(rng)), .kappa = u(rng),
                     .N_B = std::pow(10.0, -1 + 3 * u(rng))};
    if (p.N_B < p.kappa * p.N_S) continue;  // approximate covariance is unphysical there
    double prev = 1;
    for (int k = 1; k < 100; ++k) {
      const double o = qi::s_overlap(p, k / 100.0);
      EXPECT_GT(o, 0.0);
      EXPECT_LE(o, 1.0);
      EXPECT_LT(std::abs(o - prev), 0.05);
      prev = o;
    }
  }
}

TEST(SOverlap, RejectsBadArguments) {
  EXPECT_THROW(qi::s_overlap(small_noise(), -0.1), qi::DomainError);
  EXPECT_THROW(qi::s_overlap(small_noise(), 1.1), qi::DomainError);
  ScenarioParams unphysical{.M = 1, .N_S = 1, .kappa = 1, .N_B = 0};
  EXPECT_THROW(qi::s_overlap(unphysical, 0.5), qi::StateError);
}

TEST(SOverlap, LongDoubleAgreesWithDouble) {
  for (double s : {0.2, 0.5, 0.8}) {
    EXPECT_NEAR(std::exp(static_cast<double>(qi::s_log_overlap(small_noise(), s))), qi::s_overlap(small_noise(), s),
                1e-14);
  }
}

TEST(QcbExponent, ZeroKappaShortCircuits) {
  ScenarioParams p = small_noise();
  p.kappa = 0;
  const qi::QcbResult r = qi::qcb_exponent(p);
  EXPECT_EQ(r.exponent, 0.0);
  EXPECT_EQ(r.overlap, 1.0);
}

TEST(QcbExponent, ResultInvariants) {
  for (const ScenarioParams& p : {small_noise(), ScenarioParams{}, ScenarioParams{.N_S = 1e-3, .N_B = 100}}) {
    const qi::QcbResult r = qi::qcb_exponent(p);
    EXPECT_GE(r.s_star, 0.0);
    EXPECT_LE(r.s_star, 1.0);
    EXPECT_GT(r.overlap, 0.0);
    EXPECT_LE(r.overlap, 1.0);
    EXPECT_NEAR(r.exponent, -std::log(r.overlap), 1e-12);
    // The minimizer is not beaten 1e-3 away on either side.
    const long double at = qi::s_log_overlap(p, r.s_star);
    EXPECT_GE(qi::s_log_overlap(p, r.s_star - 1e-3), at);
    EXPECT_GE(qi::s_log_overlap(p, r.s_star + 1e-3), at);
  }
}

TEST(QcbExponent, ReferenceNearAsymptote) {
  const qi::QcbResult r = qi::qcb_exponent(ScenarioParams{});
  const double ratio = r.exponent / qi::qcb_asymptote(ScenarioParams{});
  EXPECT_GT(ratio, 0.8);
  EXPECT_LT(ratio, 1.05);
}

TEST(QcbExponent, MonotoneInKappa) {
  for (double nb : {0.5, 5.0, 50.0}) {
    double prev = 0;
    for (double k = 0; k <= 1.0001; k += 0.05) {
      const double e = qi::qcb_exponent({.M = 1, .N_S = 0.01, .kappa = std::min(k, 1.0), .N_B = nb}).exponent;
      EXPECT_GE(e, prev * (1 - 1e-9));
      prev = e;
    }
  }
}

TEST(QcbAsymptote, Examples) {
  EXPECT_NEAR(qi::qcb_asymptote(ScenarioParams{}), 5e-8, 1e-22);
  EXPECT_EQ(qi::qcb_asymptote({.kappa = 0}), 0.0);
  EXPECT_EQ(qi::qcb_asymptote({.M = 1, .N_S = 1, .kappa = 1, .N_B = 1}), 1.0);
  EXPECT_THROW(qi::qcb_asymptote({.N_B = 0}), qi::DomainError);
}

TEST(QcbSweep, RatioApproachesOneFromBelow) {
  const auto ns = qi::log_grid(1e-5, 1e-2, 13);
  const std::vector<double> nb{20, 100};
  const auto rows = qi::qcb_normalization_sweep(ns, nb, 0.01);
  ASSERT_EQ(rows.size(), 26u);
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto& r = rows[b * ns.size() + i];
      EXPECT_EQ(r.N_B, nb[b]);
      EXPECT_EQ(r.N_S, ns[i]);
      ASSERT_TRUE(r.ratio.has_value());
      EXPECT_TRUE(std::isfinite(*r.ratio));
      // Smaller N_S, closer to one.
      if (i > 0) EXPECT_GE(*rows[b * ns.size() + i - 1].ratio, *r.ratio);
      if (r.N_S <= 1e-3) {
        EXPECT_GT(*r.ratio, 0.8);
        EXPECT_LT(*r.ratio, 1.05);
      }
    }
  }
  // Brighter noise is closer to the asymptote at every N_S.
  for (std::size_t i = 0; i < ns.size(); ++i) EXPECT_GT(*rows[ns.size() + i].ratio, *rows[i].ratio);
}

TEST(QcbSweep, ZeroKappaRowsHaveNoRatio) {
  const std::vector<double> ns{1e-4, 1e-3}, nb{20};
  for (const auto& r : qi::qcb_normalization_sweep(ns, nb, 0.0)) {
    EXPECT_FALSE(r.ratio.has_value());
    EXPECT_EQ(r.qcb.exponent, 0.0);
  }
}

TEST(QcbSweep, ThreadCountDoesNotChangeRows) {
  const auto ns = qi::log_grid(1e-5, 1e-2, 7);
  const std::vector<double> nb{20, 50, 100};
  const auto a = qi::qcb_normalization_sweep(ns, nb, 0.01, 1);
  const auto b = qi::qcb_normalization_sweep(ns, nb, 0.01, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].qcb.exponent, b[i].qcb.exponent);
    EXPECT_EQ(a[i].qcb.s_star, b[i].qcb.s_star);
  }
}

TEST(QcbSweep, SinglePoint) {
  const std::vector<double> ns{1e-3}, nb{20};
  EXPECT_EQ(qi::qcb_normalization_sweep(ns, nb, 0.01).size(), 1u);
}
