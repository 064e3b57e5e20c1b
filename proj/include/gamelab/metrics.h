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

#ifndef GAMELAB_METRICS_H_
#define GAMELAB_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gamelab/core_types.h"
#include "gamelab/games.h"
#include "gamelab/learners.h"

namespace gamelab {

// <V_i(x_t), x_{i,t} - p_i>, one term of player i's linearized regret.
double RegretIncrement(const Game& game, const JointAction& x_t,
                       std::size_t player, const PlayerVector& benchmark);
// Same quantity when V(x_t) is already known.
double RegretIncrement(const JointAction& v, const JointAction& x_t,
                       std::size_t player, const PlayerVector& benchmark);

// sum_i ||V_i(x_t)||^2
double GradEnergyIncrement(const Game& game, const JointAction& x_t);

inline constexpr double kSlopeFloor = 1e-9;
inline constexpr double kDefaultSlopeWindow = 0.9;

struct SeriesPoint {
  double t = 0.0;
  double value = 0.0;
};

// OLS slope of log(value) against log(t), over the points whose log(t) lies
// in the last `window` fraction of the series' log-time span. Values below
// kSlopeFloor are floored. Throws StructuralError when fewer than 8 points
// fall in the window.
double LoglogSlope(std::span<const SeriesPoint> series,
                   double window = kDefaultSlopeWindow);
// Convenience overload for values indexed by t = 1, 2, ...
double LoglogSlope(std::span<const double> values_from_t1,
                   double window = kDefaultSlopeWindow);

// Absolute residual of the per-step energy identity of OG+ (for og_plus and
// og rounds) or OptDA+ (for optda_plus rounds), divided by
// 1 + ||X_t - p||^2. GDA rounds return nullopt.
std::optional<double> EnergyIdentityResidual(const RoundTrace& trace,
                                             const PlayerVector& probe);

// Per-run accumulator of everything recorded about a run.
class MetricAccumulator {
 public:
  // benchmarks[i] lists player i's comparator actions.
  MetricAccumulator(std::vector<std::vector<PlayerVector>> benchmarks);

  // Records round t: x_t is the played profile and v = V(x_t).
  void Observe(const Game& game, const JointAction& x_t, const JointAction& v);
  void ObserveResidual(double residual);

  std::size_t num_players() const { return regret_.size(); }
  const std::vector<PlayerVector>& benchmarks(std::size_t player) const {
    return benchmarks_[player];
  }
  // Cumulative linearized regret of `player` against each benchmark.
  const std::vector<double>& regret(std::size_t player) const {
    return regret_[player];
  }
  double MaxRegret(std::size_t player) const;
  double grad_energy_cum() const { return grad_energy_cum_; }
  double last_distance() const { return last_distance_; }
  double max_residual() const { return max_residual_; }
  std::int64_t rounds() const { return rounds_; }

 private:
  std::vector<std::vector<PlayerVector>> benchmarks_;
  std::vector<std::vector<double>> regret_;
  double grad_energy_cum_ = 0.0;
  double last_distance_ = 0.0;
  double max_residual_ = 0.0;
  std::int64_t rounds_ = 0;
};

// Equilibrium coordinate of the player plus +/- radius along each axis.
std::vector<PlayerVector> DefaultBenchmarks(const Game& game,
                                            std::size_t player, double radius);

}  // namespace gamelab

#endif  // GAMELAB_METRICS_H_
