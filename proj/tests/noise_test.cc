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


#include "gamelab/noise.h"

#include <cmath>

#include "gamelab/errors.h"
#include "gtest/gtest.h"

namespace gamelab {
namespace {

TEST(NoiseTest, NoiselessReturnsOracleExactly) {
  RngStream rng(1, 1);
  const FeedbackSample s =
      SampleFeedback(PlayerVector{1.0, -1.0}, NoiseSpec{}, rng, 0, 1);
  EXPECT_EQ(s.g, (PlayerVector{1.0, -1.0}));
}

TEST(NoiseTest, MultiplicativeVanishesAtZeroField) {
  RngStream rng(1, 1);
  NoiseSpec spec;
  spec.sigma_mult = 3.0;
  EXPECT_TRUE(spec.multiplicative());
  const FeedbackSample s = SampleFeedback(PlayerVector{0.0, 0.0}, spec, rng);
  EXPECT_TRUE(s.g.IsZero());
}

TEST(NoiseTest, SecondMomentFollowsVarianceLaw) {
  NoiseSpec spec;
  spec.sigma_add = 0.5;
  spec.sigma_mult = 1.0;
  RngStream rng(2, 1);
  const PlayerVector clean{1.0, -1.0};
  const int n = 100000;
  double sq = 0.0;
  double mean[2] = {0, 0};
  for (int i = 0; i < n; ++i) {
    const FeedbackSample s = SampleFeedback(clean, spec, rng);
    sq += s.xi.NormSq();
    mean[0] += s.xi[0] / n;
    mean[1] += s.xi[1] / n;
  }
  // 0.25 + 1 * ||V||^2
  EXPECT_GE(sq / n, 0.95 * 2.25);
  EXPECT_LE(sq / n, 1.05 * 2.25);
  // Unbiased: standard error of each coordinate mean is about 0.0034.
  EXPECT_LT(std::abs(mean[0]), 0.02);
  EXPECT_LT(std::abs(mean[1]), 0.02);
}

TEST(NoiseTest, MultiplicativeScalesWithFieldNorm) {
  NoiseSpec spec;
  spec.sigma_mult = 1.0;
  const int n = 50000;
  double small = 0.0, large = 0.0;
  RngStream a(3, 1), b(3, 2);
  for (int i = 0; i < n; ++i) {
    small += SampleFeedback(PlayerVector{1.0}, spec, a).xi.NormSq() / n;
    large += SampleFeedback(PlayerVector{3.0}, spec, b).xi.NormSq() / n;
  }
  EXPECT_NEAR(small, 1.0, 0.05);
  EXPECT_NEAR(large, 9.0, 0.45);
}

TEST(NoiseTest, TruncationBoundHolds) {
  NoiseSpec spec;
  spec.sigma_add = 1.0;
  spec.bound_abs = 0.5;
  RngStream rng(4, 1);
  for (int i = 0; i < 5000; ++i) {
    const FeedbackSample s = SampleFeedback(PlayerVector{0.2, 0.1}, spec, rng);
    ASSERT_LE(std::sqrt(s.xi.NormSq()), 0.5);
  }
}

TEST(NoiseTest, ImpossibleTruncationIsRunError) {
  NoiseSpec spec;
  spec.sigma_add = 100.0;
  spec.bound_abs = 1e-12;
  RngStream rng(5, 1);
  EXPECT_THROW(SampleFeedback(PlayerVector(8, 0.0), spec, rng, 1, 7), RunError);
}

TEST(NoiseTest, InvalidSpecsRejected) {
  NoiseSpec a;
  a.sigma_add = -1.0;
  EXPECT_THROW(a.Validate(), ConfigError);
  NoiseSpec b;
  b.sigma_mult = std::nan("");
  EXPECT_THROW(b.Validate(), ConfigError);
}

TEST(ZeroFeedbackTest, Examples) {
  EXPECT_EQ(ZeroFeedback(1).g, PlayerVector{0.0});
  EXPECT_EQ(ZeroFeedback(3).g, (PlayerVector{0.0, 0.0, 0.0}));
  EXPECT_THROW(ZeroFeedback(0), StructuralError);
}

TEST(NoiseStreamTest, PlayersUseDistinctStreams) {
  EXPECT_NE(NoiseStreamId(0), NoiseStreamId(1));
  EXPECT_NE(NoiseStreamId(0), 0u);
}

}  // namespace
}  // namespace gamelab
