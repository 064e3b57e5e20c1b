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

#ifndef GAMELAB_LEARNERS_H_
#define GAMELAB_LEARNERS_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "gamelab/core_types.h"
#include "gamelab/games.h"
#include "gamelab/noise.h"
#include "gamelab/schedules.h"

namespace gamelab {

// gda:        x_t = X_t,                     X_{t+1} = X_t - eta_t g_t
// og:         og_plus with a single sequence eta_t for both steps
// og_plus:    x_t = X_t - gh_t g_{t-1},      X_{t+1} = X_t - gamma_{t+1} g_t
// optda_plus: x_t = X_t - gh_t g_{t-1},      X_{t+1} = X_1 - gamma_{t+1} sum g
enum class LearnerKind { kGda, kOg, kOgPlus, kOptDaPlus };

std::string LearnerKindName(LearnerKind kind);
LearnerKind ParseLearnerKind(const std::string& name);
bool IsOptimistic(LearnerKind kind);
// Step-size condition family used for theorem-derived schedules.
RateFamily DefaultRateFamily(LearnerKind kind);

// The two rates consumed in round t: gamma_hat = gh_t for the extrapolation
// and gamma_next = gamma_{t+1} for the update (eta_t for gda and og).
struct RoundRates {
  double gamma_hat = 0.0;
  double gamma_next = 0.0;
  // Last round absorbed by the schedule when each rate was computed.
  std::int64_t hat_state_round = 0;
  std::int64_t next_state_round = 0;
};

// Everything needed to replay one round through the energy identities.
struct RoundTrace {
  LearnerKind kind = LearnerKind::kOgPlus;
  std::int64_t t = 0;
  PlayerVector x_t;       // X_t
  PlayerVector x_half;    // X_{t+1/2}, the played point
  PlayerVector x_next;    // X_{t+1}
  PlayerVector g;         // g_t
  PlayerVector g_prev;    // g_{t-1}
  PlayerVector x_init;    // X_1
  double gamma_hat = 0.0;      // gh_t
  double gamma_next = 0.0;     // gamma_{t+1}
  double gamma_current = 0.0;  // gamma_t, with gamma_1 = gamma_2
};

// One player's learning state machine. Each round runs
// BeginRound -> Extrapolate -> Update.
class Learner {
 public:
  Learner(LearnerKind kind, PlayerVector x_init, Schedule schedule,
          std::size_t player = 0);

  // Computes gh_t from the schedule state before round t-1's feedback is
  // absorbed, folds that feedback in, then computes gamma_{t+1}.
  RoundRates BeginRound();
  const PlayerVector& Extrapolate(const RoundRates& rates);
  RoundTrace Update(const FeedbackSample& g, const RoundRates& rates);

  LearnerKind kind() const { return kind_; }
  std::int64_t t() const { return t_; }
  std::size_t player() const { return player_; }
  const PlayerVector& x() const { return x_; }
  const PlayerVector& x_half() const { return x_half_; }
  const PlayerVector& x_init() const { return x_init_; }
  const PlayerVector& g_prev() const { return g_prev_.g; }
  const PlayerVector& g_sum() const { return g_sum_; }
  double gamma_current() const { return gamma_current_; }
  const Schedule& schedule() const { return schedule_; }

 private:
  LearnerKind kind_;
  std::size_t player_;
  std::int64_t t_ = 1;
  PlayerVector x_;
  PlayerVector x_half_;
  PlayerVector x_init_;
  FeedbackSample g_prev_;
  PlayerVector g_sum_;
  double last_diff_sq_ = 0.0;
  double gamma_current_ = 0.0;
  bool round_open_ = false;
  Schedule schedule_;
};

struct EquivalenceReport {
  bool agree = false;
  double max_gap = 0.0;
  std::int64_t rounds = 0;
};

// Runs OG+ and OptDA+ side by side with the same constant rates and the same
// noise streams and compares the base iterates X_t of every player.
EquivalenceReport EqualRateEquivalenceCheck(std::int64_t horizon,
                                            const Game& game,
                                            const NoiseSpec& noise,
                                            RatePair rates,
                                            const JointAction& x_init,
                                            std::uint64_t seed,
                                            double tolerance = 1e-9);

}  // namespace gamelab

#endif  // GAMELAB_LEARNERS_H_
