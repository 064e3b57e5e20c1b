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

// Registry of the reproducibility criteria. Each criterion builds its own
// experiments on the scalar bilinear game, runs them over the configured
// seeds and compares a summary statistic against a fixed tolerance.

#ifndef GAMELAB_CHECKS_H_
#define GAMELAB_CHECKS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gamelab {

struct CheckOptions {
  std::vector<std::uint64_t> seeds;  // empty means 1..20
  // Replaces the criterion's horizon; relative checkpoints (T/10) follow.
  std::optional<std::int64_t> horizon;
};

struct CheckResult {
  std::string id;
  bool passed = false;
  std::string summary;
  // Named measured statistics, in reporting order.
  std::vector<std::pair<std::string, double>> stats;
};

// Registered ids, in criterion order.
const std::vector<std::string>& CriterionIds();
bool IsCriterion(const std::string& id);

// Throws ConfigError for an unknown id.
CheckResult RunCriterion(const std::string& id, const CheckOptions& options);

std::vector<std::uint64_t> DefaultCheckSeeds();

}  // namespace gamelab

#endif  // GAMELAB_CHECKS_H_
