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


#include "gamelab/checks.h"

#include <algorithm>

#include "gamelab/errors.h"
#include "gtest/gtest.h"

namespace gamelab {
namespace {

TEST(CriterionRegistryTest, TenCriteriaInOrder) {
  const auto& ids = CriterionIds();
  ASSERT_EQ(ids.size(), 10u);
  EXPECT_EQ(ids.front(), "energy-identities");
  EXPECT_EQ(ids.back(), "constant-rate-coincidence");
  EXPECT_TRUE(IsCriterion("sqrtT-additive"));
  EXPECT_FALSE(IsCriterion("unknown-id"));
}

TEST(CriterionRegistryTest, UnknownIdIsUsageError) {
  EXPECT_THROW(RunCriterion("unknown-id", {}), ConfigError);
}

TEST(CriterionRegistryTest, ShortHorizonRejected) {
  CheckOptions o;
  o.horizon = 10;
  EXPECT_THROW(RunCriterion("energy-identities", o), ConfigError);
}

TEST(CriterionRegistryTest, DefaultSeeds) {
  const auto seeds = DefaultCheckSeeds();
  ASSERT_EQ(seeds.size(), 20u);
  EXPECT_EQ(seeds.front(), 1u);
  EXPECT_EQ(seeds.back(), 20u);
}

TEST(CriterionTest, EnergyIdentitiesOnFewSeeds) {
  CheckOptions o;
  o.seeds = {1, 2};
  const CheckResult r = RunCriterion("energy-identities", o);
  EXPECT_TRUE(r.passed) << r.summary;
  ASSERT_FALSE(r.stats.empty());
  EXPECT_LE(r.stats.front().second, 1e-9);
}

TEST(CriterionTest, CoincidenceAndLemma) {
  CheckOptions o;
  o.seeds = {3};
  EXPECT_TRUE(RunCriterion("constant-rate-coincidence", o).passed);
  EXPECT_TRUE(RunCriterion("adagrad-lemma", o).passed);
}

}  // namespace
}  // namespace gamelab
