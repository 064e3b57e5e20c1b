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


#include "gamelab/core_types.h"

#include <cmath>
#include <vector>

#include "gamelab/errors.h"
#include "gtest/gtest.h"

namespace gamelab {
namespace {

TEST(WeightedNormTest, UnitWeightsReduceToSquaredNorm) {
  const JointAction x{PlayerVector{1.0}, PlayerVector{-1.0}};
  EXPECT_DOUBLE_EQ(WeightedNormSq(x, WeightVector{1.0, 1.0}), 2.0);
}

TEST(WeightedNormTest, MixedDimensions) {
  const JointAction x{PlayerVector{3.0, 4.0}, PlayerVector{0.0}};
  EXPECT_DOUBLE_EQ(WeightedNormSq(x, WeightVector{2.0, 5.0}), 50.0);
}

TEST(WeightedNormTest, ZeroVector) {
  const JointAction x{PlayerVector{0.0}, PlayerVector{0.0}};
  EXPECT_EQ(WeightedNormSq(x, WeightVector{7.0, 9.0}), 0.0);
}

TEST(WeightedNormTest, ShapeMismatchThrows) {
  const JointAction x{PlayerVector{1.0}, PlayerVector{1.0}};
  EXPECT_THROW(WeightedNormSq(x, WeightVector{1.0}), StructuralError);
  EXPECT_THROW(WeightVector({-1.0}), StructuralError);
}

// Property: ||c x||_w^2 = c^2 ||x||_w^2 and unit weights give the plain norm.
TEST(WeightedNormTest, HomogeneityAndUnitWeights) {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<PlayerVector> players;
    std::vector<double> w;
    const int n = 1 + static_cast<int>(rng.Uniform() * 4);
    for (int i = 0; i < n; ++i) {
      const std::size_t d = 1 + static_cast<std::size_t>(rng.Uniform() * 3);
      players.push_back(GaussianVector(rng, d, 2.0));
      w.push_back(3.0 * rng.Uniform());
    }
    const JointAction x(players);
    const double c = 4.0 * rng.Uniform() - 2.0;
    const WeightVector weights(w);
    EXPECT_NEAR(WeightedNormSq(c * x, weights),
                c * c * WeightedNormSq(x, weights),
                1e-12 * (1.0 + WeightedNormSq(x, weights)));
    EXPECT_NEAR(WeightedNormSq(x, WeightVector::Unit(n)), x.NormSq(), 1e-12);
  }
}

TEST(WeightNormsTest, Examples) {
  WeightNorms a = L1AndLinf(WeightVector{1.0, 1.0});
  EXPECT_DOUBLE_EQ(a.l1, 2.0);
  EXPECT_DOUBLE_EQ(a.linf, 1.0);
  WeightNorms b = L1AndLinf(WeightVector{0.5, 0.013889});
  EXPECT_NEAR(b.l1, 0.513889, 1e-12);
  EXPECT_DOUBLE_EQ(b.linf, 0.5);
  WeightNorms c = L1AndLinf(WeightVector{0.0});
  EXPECT_EQ(c.l1, 0.0);
  EXPECT_EQ(c.linf, 0.0);
}

TEST(JointActionTest, FlattenRoundTrip) {
  const JointAction x{PlayerVector{1.0, 2.0}, PlayerVector{3.0}};
  const std::vector<double> flat = x.Flatten();
  EXPECT_EQ(flat, (std::vector<double>{1.0, 2.0, 3.0}));
  const std::vector<std::size_t> dims = x.dims();
  EXPECT_EQ(JointAction::Unflatten(flat, dims), x);
  EXPECT_EQ(x.total_dim(), 3u);
  EXPECT_THROW(JointAction::Unflatten(std::vector<double>{1.0}, dims),
               StructuralError);
}

TEST(JointActionTest, ArithmeticChecksShape) {
  JointAction x{PlayerVector{1.0}, PlayerVector{2.0}};
  const JointAction y{PlayerVector{1.0, 1.0}, PlayerVector{2.0}};
  EXPECT_THROW(x += y, StructuralError);
  EXPECT_DOUBLE_EQ(Dot(x, x), 5.0);
}

TEST(RngTest, GaussianZeroStdIsExactZero) {
  RngStream rng(3, 1);
  const PlayerVector v = GaussianVector(rng, 3, 0.0);
  EXPECT_EQ(v, (PlayerVector{0.0, 0.0, 0.0}));
  EXPECT_THROW(GaussianVector(rng, 0, 1.0), StructuralError);
}

TEST(RngTest, SameSeedAndStreamRepeat) {
  RngStream a(42, 1);
  RngStream b(42, 1);
  EXPECT_EQ(GaussianVector(a, 2, 1.0), GaussianVector(b, 2, 1.0));
  RngStream c(42, 2);
  RngStream d(42, 1);
  EXPECT_NE(GaussianVector(c, 2, 1.0), GaussianVector(d, 2, 1.0));
}

TEST(RngTest, GaussianVarianceMatchesStd) {
  RngStream rng(7, 1);
  const int n = 100000;
  double sum[2] = {0, 0};
  double sq[2] = {0, 0};
  for (int i = 0; i < n; ++i) {
    const PlayerVector v = GaussianVector(rng, 2, 2.0);
    for (int j = 0; j < 2; ++j) {
      sum[j] += v[j];
      sq[j] += v[j] * v[j];
    }
  }
  for (int j = 0; j < 2; ++j) {
    const double mean = sum[j] / n;
    const double var = (sq[j] - n * mean * mean) / (n - 1);
    EXPECT_GE(var, 3.8);
    EXPECT_LE(var, 4.2);
  }
}

TEST(RngTest, UniformInOpenInterval) {
  RngStream rng(0, 0);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, UniformInBallStaysInside) {
  RngStream rng(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> p = UniformInBall(rng, 3, 2.0);
    double norm_sq = 0.0;
    for (double v : p) norm_sq += v * v;
    ASSERT_LE(norm_sq, 4.0 + 1e-12);
  }
}

}  // namespace
}  // namespace gamelab
