// Copyright 2026 The GameLab Authors
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


#include "gamelab/metrics.h"

#include <cmath>
#include <vector>

#include "gamelab/errors.h"
#include "gtest/gtest.h"

namespace gamelab {
namespace {

const Game& Scalar() {
  static const Game g = Game::ScalarBilinear();
  return g;
}

TEST(RegretIncrementTest, Examples) {
  const JointAction x{PlayerVector{1.0}, PlayerVector{1.0}};
  EXPECT_EQ(RegretIncrement(Scalar(), x, 0, x[0]), 0.0);
  EXPECT_DOUBLE_EQ(RegretIncrement(Scalar(), x, 0, PlayerVector{0.0}), 1.0);
  // Linear in the benchmark gap.
  const double base = RegretIncrement(Scalar(), x, 1, PlayerVector{0.5});
  const double scaled = RegretIncrement(Scalar(), x, 1, PlayerVector{1.0 - 3.0 * 0.5});
  EXPECT_DOUBLE_EQ(scaled, 3.0 * base);
  EXPECT_THROW(RegretIncrement(Scalar(), x, 2, PlayerVector{0.0}), StructuralError);
}

// On a bilinear game the loss is linear in the player's own action, so the
// linearized regret equals the true regret.
TEST(RegretIncrementTest, LinearizedEqualsTrueOnBilinear) {
  Eigen::MatrixXd a(2, 1);
  a << 1.0, -2.0;
  const Game g = Game::Bilinear(a);
  RngStream rng(8, 0);
  const PlayerVector bench{0.7, -1.1};
  double lin = 0.0, actual = 0.0;
  for (int t = 0; t < 100; ++t) {
    const JointAction x{GaussianVector(rng, 2, 1.0), GaussianVector(rng, 1, 1.0)};
    lin += RegretIncrement(g, x, 0, bench);
    JointAction dev = x;
    dev[0] = bench;
    actual += *g.PlayerLoss(x, 0) - *g.PlayerLoss(dev, 0);
  }
  EXPECT_NEAR(lin, actual, 1e-12 * (1.0 + std::abs(actual)));
}

TEST(GradEnergyTest, Examples) {
  EXPECT_EQ(GradEnergyIncrement(Scalar(), {PlayerVector{0.0}, PlayerVector{0.0}}), 0.0);
  EXPECT_DOUBLE_EQ(
      GradEnergyIncrement(Scalar(), {PlayerVector{1.0}, PlayerVector{1.0}}), 2.0);
}

TEST(AccumulatorTest, EnergyIsAdditive) {
  MetricAccumulator acc({DefaultBenchmarks(Scalar(), 0, 2.0),
                         DefaultBenchmarks(Scalar(), 1, 2.0)});
  for (double s : {1.0, 0.5}) {
    const JointAction x{PlayerVector{s}, PlayerVector{s}};
    acc.Observe(Scalar(), x, Scalar().PayoffGradient(x));
  }
  EXPECT_DOUBLE_EQ(acc.grad_energy_cum(), 2.5);
  EXPECT_EQ(acc.rounds(), 2);
  EXPECT_DOUBLE_EQ(acc.last_distance(), std::sqrt(0.5));
  // Player 0 field is y: 1 then 0.5. Best benchmark is -2:
  // 1 * (1 + 2) + 0.5 * (0.5 + 2) = 4.25.
  EXPECT_DOUBLE_EQ(acc.MaxRegret(0), 4.25);
}

TEST(DefaultBenchmarksTest, Layout) {
  const auto b = DefaultBenchmarks(Scalar(), 0, 2.0);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], PlayerVector{0.0});
  EXPECT_EQ(b[1], PlayerVector{2.0});
  EXPECT_EQ(b[2], PlayerVector{-2.0});
  EXPECT_EQ(DefaultBenchmarks(Scalar(), 0, 0.0).size(), 1u);
}

std::vector<double> Series(double (*f)(double), int n) {
  std::vector<double> v;
  for (int t = 1; t <= n; ++t) v.push_back(f(t));
  return v;
}

TEST(LoglogSlopeTest, ExactPowerLaws) {
  EXPECT_NEAR(LoglogSlope(Series([](double t) { return t; }, 1000)), 1.0, 1e-6);
  EXPECT_NEAR(LoglogSlope(Series([](double t) { return std::sqrt(t); }, 1000)),
              0.5, 1e-6);
  EXPECT_NEAR(LoglogSlope(Series([](double) { return 7.0; }, 1000)), 0.0, 1e-6);
}

TEST(LoglogSlopeTest, FloorsNonPositiveValues) {
  EXPECT_NEAR(LoglogSlope(Series([](double) { return -3.0; }, 100)), 0.0, 1e-12);
}

TEST(LoglogSlopeTest, TooFewPointsThrows) {
  EXPECT_THROW(LoglogSlope(Series([](double t) { return t; }, 5)), StructuralError);
  EXPECT_THROW(LoglogSlope(Series([](double t) { return t; }, 100), 0.0),
               StructuralError);
}

RoundTrace OgPlusRound() {
  RoundTrace r;
  r.kind = LearnerKind::kOgPlus;
  r.t = 2;
  r.x_t = PlayerVector{2.0};
  r.g_prev = PlayerVector{1.0};
  r.gamma_hat = 0.5;
  r.gamma_next = 0.25;
  r.x_half = PlayerVector{1.5};
  r.g = PlayerVector{3.0};
  r.x_next = PlayerVector{1.25};
  r.x_init = PlayerVector{2.0};
  r.gamma_current = 0.25;
  return r;
}

// X_1 = 1, g_1 = 1, gamma_2 = 0.5, so X_2 = 0.5. Round 2 uses gamma_hat = 1,
// plays -0.5, receives g_2 = 2, and gamma_3 = 0.25 gives X_3 = 0.25.
RoundTrace OptDaRound() {
  RoundTrace r;
  r.kind = LearnerKind::kOptDaPlus;
  r.t = 2;
  r.x_init = PlayerVector{1.0};
  r.x_t = PlayerVector{0.5};
  r.g_prev = PlayerVector{1.0};
  r.gamma_hat = 1.0;
  r.x_half = PlayerVector{-0.5};
  r.g = PlayerVector{2.0};
  r.gamma_current = 0.5;
  r.gamma_next = 0.25;
  r.x_next = PlayerVector{0.25};
  return r;
}

TEST(EnergyIdentityTest, HandBuiltRoundsAreExact) {
  // Both sides were expanded by hand: OG+ gives 1.5625 = 1.5625 and OptDA+
  // gives 0.25 = 0.25 at p = 0.
  EXPECT_EQ(*EnergyIdentityResidual(OgPlusRound(), PlayerVector{0.0}), 0.0);
  EXPECT_LE(*EnergyIdentityResidual(OptDaRound(), PlayerVector{0.0}), 1e-15);
  for (double p : {-2.0, 0.3, 5.0}) {
    EXPECT_LE(*EnergyIdentityResidual(OgPlusRound(), PlayerVector{p}), 1e-14);
    EXPECT_LE(*EnergyIdentityResidual(OptDaRound(), PlayerVector{p}), 1e-14);
  }
}

TEST(EnergyIdentityTest, DetectsPerturbedUpdate) {
  for (RoundTrace r : {OgPlusRound(), OptDaRound()}) {
    r.x_next[0] += 1e-3;
    EXPECT_GT(*EnergyIdentityResidual(r, PlayerVector{0.0}), 1e-4)
        << LearnerKindName(r.kind);
  }
}

TEST(EnergyIdentityTest, GdaIsNotApplicable) {
  RoundTrace r = OgPlusRound();
  r.kind = LearnerKind::kGda;
  EXPECT_FALSE(EnergyIdentityResidual(r, PlayerVector{0.0}).has_value());
}

}  // namespace
}  // namespace gamelab
