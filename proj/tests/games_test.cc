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


#include "gamelab/games.h"

#include <cmath>

#include "gamelab/errors.h"
#include "gtest/gtest.h"

namespace gamelab {
namespace {

Game IdentityQuadratic() {
  return Game::Quadratic({1, 1}, Eigen::MatrixXd::Identity(2, 2),
                         Eigen::VectorXd::Zero(2));
}

TEST(GameTest, ScalarBilinearField) {
  const Game g = Game::ScalarBilinear();
  const JointAction v = g.PayoffGradient({PlayerVector{1.0}, PlayerVector{1.0}});
  EXPECT_EQ(v[0][0], 1.0);
  EXPECT_EQ(v[1][0], -1.0);
  EXPECT_DOUBLE_EQ(g.lipschitz(), 1.0);
}

TEST(GameTest, QuadraticIdentityField) {
  const JointAction v =
      IdentityQuadratic().PayoffGradient({PlayerVector{2.0}, PlayerVector{-3.0}});
  EXPECT_EQ(v[0][0], 2.0);
  EXPECT_EQ(v[1][0], -3.0);
}

TEST(GameTest, FieldVanishesAtStoredEquilibrium) {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 2.0, -0.5, 3.0;
  Eigen::MatrixXd b(3, 3);
  b << 2.0, 1.0, 0.0, -1.0, 1.0, 0.5, 0.0, -0.5, 1.5;
  Eigen::VectorXd c(3);
  c << 1.0, -2.0, 0.5;
  for (const Game& g : {Game::ScalarBilinear(), Game::Bilinear(a),
                        Game::Quadratic({2, 1}, b, c), IdentityQuadratic()}) {
    const JointAction& z = g.equilibria().points.front();
    EXPECT_LE(std::sqrt(g.PayoffGradient(z).NormSq()), 1e-10);
  }
}

// Property: V is affine, so V(a x + (1 - a) y) = a V(x) + (1 - a) V(y).
TEST(GameTest, FieldIsAffine) {
  Eigen::MatrixXd b(2, 2);
  b << 1.0, 2.0, -2.0, 1.0;
  const Game g = Game::Quadratic({1, 1}, b, Eigen::VectorXd::Ones(2));
  RngStream rng(9, 0);
  for (int i = 0; i < 100; ++i) {
    const JointAction x{GaussianVector(rng, 1, 3.0), GaussianVector(rng, 1, 3.0)};
    const JointAction y{GaussianVector(rng, 1, 3.0), GaussianVector(rng, 1, 3.0)};
    const double a = rng.Uniform();
    const JointAction lhs = g.PayoffGradient(a * x + (1.0 - a) * y);
    const JointAction rhs =
        a * g.PayoffGradient(x) + (1.0 - a) * g.PayoffGradient(y);
    EXPECT_LE((lhs - rhs).NormSq(), 1e-20);
  }
}

TEST(GameTest, PlayerLossOnlyForBilinear) {
  const Game g = Game::ScalarBilinear();
  const JointAction x{PlayerVector{2.0}, PlayerVector{3.0}};
  EXPECT_DOUBLE_EQ(*g.PlayerLoss(x, 0), 6.0);
  EXPECT_DOUBLE_EQ(*g.PlayerLoss(x, 1), -6.0);
  EXPECT_FALSE(IdentityQuadratic().PlayerLoss(x, 0).has_value());
}

TEST(GameTest, InvalidConstructionThrows) {
  Eigen::MatrixXd neg(2, 2);
  neg << -1.0, 0.0, 0.0, 1.0;
  EXPECT_THROW(Game::Quadratic({1, 1}, neg, Eigen::VectorXd::Zero(2)),
               ConfigError);
  EXPECT_THROW(Game::Quadratic({1, 1}, Eigen::MatrixXd::Zero(2, 2),
                               Eigen::VectorXd::Zero(2)),
               ConfigError);
  EXPECT_THROW(Game::Bilinear(Eigen::MatrixXd::Ones(1, 1), 0.5), ConfigError);
  EXPECT_NO_THROW(Game::Bilinear(Eigen::MatrixXd::Ones(1, 1), 2.0));
  EXPECT_THROW(Game::ScalarBilinear().PayoffGradient({PlayerVector{1.0}}),
               StructuralError);
}

TEST(DistanceTest, Examples) {
  const Game g = Game::ScalarBilinear();
  EXPECT_EQ(DistanceToEquilibrium(g, {PlayerVector{0.0}, PlayerVector{0.0}}), 0.0);
  EXPECT_DOUBLE_EQ(
      DistanceToEquilibrium(g, {PlayerVector{3.0}, PlayerVector{4.0}}), 5.0);
  EXPECT_DOUBLE_EQ(DistanceToEquilibrium(IdentityQuadratic(),
                                         {PlayerVector{1.0}, PlayerVector{0.0}},
                                         WeightVector{4.0, 1.0}),
                   2.0);
}

TEST(StabilityProbeTest, BilinearIsExactlyZero) {
  RngStream rng(1, 0);
  const StabilityReport r =
      VariationalStabilityProbe(Game::ScalarBilinear(), rng, 1000, 5.0);
  EXPECT_GE(r.min_inner, -1e-10);
  EXPECT_LE(r.min_inner, 1e-10);
  EXPECT_EQ(r.evaluations, 1000u);
}

TEST(StabilityProbeTest, QuadraticIdentityIsPositive) {
  RngStream rng(2, 0);
  const StabilityReport r =
      VariationalStabilityProbe(IdentityQuadratic(), rng, 1000, 5.0);
  EXPECT_GE(r.min_inner, 0.0);
  RngStream one(2, 0);
  EXPECT_EQ(VariationalStabilityProbe(IdentityQuadratic(), one, 1, 0.0).min_inner,
            0.0);
}

TEST(LipschitzProbeTest, EstimateBelowStoredConstant) {
  RngStream rng(4, 0);
  EXPECT_LE(LipschitzProbe(Game::ScalarBilinear(), rng, 1000, 3.0), 1.0 + 1e-9);
  EXPECT_LE(LipschitzProbe(IdentityQuadratic(), rng, 1000, 3.0), 1.0 + 1e-9);
  // Small radii still never divide by zero.
  EXPECT_LE(LipschitzProbe(IdentityQuadratic(), rng, 10, 1e-100), 1.0 + 1e-9);
  EXPECT_THROW(LipschitzProbe(IdentityQuadratic(), rng, 10, 0.0), StructuralError);
  EXPECT_THROW(LipschitzProbe(IdentityQuadratic(), rng, 10, 1e-300), RunError);
}

}  // namespace
}  // namespace gamelab
