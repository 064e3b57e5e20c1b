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

#ifndef GAMELAB_HARNESS_H_
#define GAMELAB_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gamelab/core_types.h"
#include "gamelab/games.h"
#include "gamelab/learners.h"
#include "gamelab/metrics.h"
#include "gamelab/noise.h"
#include "gamelab/schedules.h"

namespace gamelab {

struct PlayerConfig {
  LearnerKind algorithm = LearnerKind::kOgPlus;
  ScheduleSpec schedule;
  // X_1; all ones when unset.
  std::optional<PlayerVector> initial;
};

enum class OpponentKind { kOscillator, kBestResponse };

// A non-learning player whose actions are scripted. These are simple bounded
// adversaries, not a lower-bound construction.
struct OpponentSpec {
  std::size_t player = 1;
  OpponentKind kind = OpponentKind::kOscillator;
  double amplitude = 1.0;
};

// Runtime assertions a run can enable; the measurability check is always on.
enum class RunCheck { kEnergyIdentity, kDualAveraging, kNonIncreasingRates };
std::string RunCheckName(RunCheck check);

struct ExperimentConfig {
  Game game = Game::ScalarBilinear();
  NoiseSpec noise;
  // One entry per learning player, in increasing player order; players
  // taken over by opponents have no entry.
  std::vector<PlayerConfig> players;
  std::vector<OpponentSpec> opponents;
  std::int64_t horizon = 1000;
  std::vector<std::uint64_t> seeds{1};
  double benchmark_radius = 2.0;
  std::string output_dir = "out";
  std::vector<RunCheck> checks;

  void Validate() const;
  bool Enabled(RunCheck check) const;
};

// Parses the JSON config format. Unknown keys, wrong types and invalid
// values raise ConfigError.
ExperimentConfig ParseConfig(const nlohmann::json& doc);
ExperimentConfig LoadConfig(const std::string& path);

// Played action of a scripted opponent at round t. `last_played` is the
// previous round's profile (nullptr at t = 1).
PlayerVector AdversarialOpponentStep(const OpponentSpec& spec, const Game& game,
                                     std::int64_t t,
                                     const JointAction* last_played);

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::int64_t t = 0;
  std::size_t player = 0;
  PlayerVector x;
  double regret_lin = 0.0;
  double dist_eq = 0.0;
  double grad_energy_cum = 0.0;
  double gamma_hat = 0.0;
  double gamma = 0.0;
};

// What an observer sees after round t has been played and updated.
struct RoundView {
  std::int64_t t = 0;
  const JointAction* played = nullptr;
  const JointAction* gradient = nullptr;
  const MetricAccumulator* metrics = nullptr;
  // Per player; zeros for opponents.
  const std::vector<RoundRates>* rates = nullptr;
  const std::vector<bool>* is_learner = nullptr;
  // Largest energy-identity residual seen in this round (0 when disabled).
  double round_residual = 0.0;
};

using RoundObserver = std::function<void(const RoundView&)>;

// Executes the round protocol for one seed and streams every round to
// `observer`. Returns the final metrics.
MetricAccumulator Simulate(const ExperimentConfig& config, std::uint64_t seed,
                           const RoundObserver& observer);

std::vector<RunRecord> RunOne(const ExperimentConfig& config,
                              std::uint64_t seed, std::size_t run_id = 0);

inline constexpr const char* kRunCsvHeader =
    "run,seed,t,player,x,regret_lin,dist_eq,grad_energy_cum,gamma_hat,gamma";
inline constexpr const char* kAggregateCsvHeader =
    "t,player,runs,regret_lin_mean,regret_lin_std,dist_eq_mean,dist_eq_std,"
    "grad_energy_cum_mean,grad_energy_cum_std";

// 17 significant digits.
std::string FormatDecimal(double value);
void WriteCsvRow(std::ostream& out, const RunRecord& record);
void WriteRunCsv(std::ostream& out, const std::vector<RunRecord>& records);

// Streams a run straight to `path` without keeping its records.
void RunToCsv(const ExperimentConfig& config, std::uint64_t seed,
              std::size_t run_id, const std::string& path);

struct AggregateRow {
  std::int64_t t = 0;
  std::size_t player = 0;
  std::size_t runs = 0;
  double regret_lin_mean = 0.0;
  double regret_lin_std = 0.0;
  double dist_eq_mean = 0.0;
  double dist_eq_std = 0.0;
  double grad_energy_cum_mean = 0.0;
  double grad_energy_cum_std = 0.0;
};

struct SeedOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::string csv_path;
};

struct SuiteReport {
  std::vector<SeedOutcome> outcomes;
  std::vector<AggregateRow> aggregate;
  std::size_t failures = 0;
  std::string aggregate_path;
};

// Runs every seed (in parallel, see ThreadBudget) and, when `write_files`
// is set, writes run_seed<seed>.csv files plus aggregate.csv into
// config.output_dir. The aggregate is accumulated in increasing seed order,
// so it does not depend on the order seeds are listed in.
SuiteReport RunSuite(const ExperimentConfig& config, bool write_files = true);
void WriteAggregateCsv(std::ostream& out, const std::vector<AggregateRow>& rows);

// GAMELAB_THREADS if set, else the number of logical CPUs.
std::size_t ThreadBudget();

// Calls task(i) for i in [0, count) on up to ThreadBudget() threads.
void ParallelFor(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace gamelab

#endif  // GAMELAB_HARNESS_H_
