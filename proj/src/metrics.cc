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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gamelab/errors.h"

namespace gamelab {

double RegretIncrement(const JointAction& v, const JointAction& x_t,
                       std::size_t player, const PlayerVector& benchmark) {
  if (player >= x_t.num_players() || player >= v.num_players()) {
    throw StructuralError("regret increment for unknown player " +
                          std::to_string(player));
  }
  return Dot(v[player], x_t[player] - benchmark);
}

double RegretIncrement(const Game& game, const JointAction& x_t,
                       std::size_t player, const PlayerVector& benchmark) {
  return RegretIncrement(game.PayoffGradient(x_t), x_t, player, benchmark);
}

double GradEnergyIncrement(const Game& game, const JointAction& x_t) {
  return game.PayoffGradient(x_t).NormSq();
}

double LoglogSlope(std::span<const SeriesPoint> series, double window) {
  if (!(window > 0.0 && window <= 1.0)) {
    throw StructuralError("slope window must lie in (0, 1]");
  }
  double log_min = std::numeric_limits<double>::infinity();
  double log_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : series) {
    if (!(p.t > 0.0)) throw StructuralError("slope series needs t > 0");
    log_min = std::min(log_min, std::log(p.t));
    log_max = std::max(log_max, std::log(p.t));
  }
  const double cutoff = log_max - window * (log_max - log_min);
  double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : series) {
    const double lx = std::log(p.t);
    if (lx < cutoff) continue;
    const double ly = std::log(std::max(p.value, kSlopeFloor));
    n += 1.0;
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  if (n < 8.0) {
    throw StructuralError("slope fit needs at least 8 points in the window, got " +
                          std::to_string(static_cast<int>(n)));
  }
  const double mx = sx / n;
  const double my = sy / n;
  const double var = sxx / n - mx * mx;
  if (!(var > 0.0)) throw StructuralError("slope fit over a single time point");
  return (sxy / n - mx * my) / var;
}

double LoglogSlope(std::span<const double> values_from_t1, double window) {
  std::vector<SeriesPoint> series;
  series.reserve(values_from_t1.size());
  for (std::size_t i = 0; i < values_from_t1.size(); ++i) {
    series.push_back({static_cast<double>(i + 1), values_from_t1[i]});
  }
  return LoglogSlope(series, window);
}

std::optional<double> EnergyIdentityResidual(const RoundTrace& trace,
                                             const PlayerVector& probe) {
  const PlayerVector& x = trace.x_t;
  const PlayerVector& x_half = trace.x_half;
  const PlayerVector& x_next = trace.x_next;
  const PlayerVector& g = trace.g;
  const PlayerVector& g_prev = trace.g_prev;
  const double gh = trace.gamma_hat;
  const double gn = trace.gamma_next;
  const double dist_sq = (x - probe).NormSq();

  switch (trace.kind) {
    case LearnerKind::kGda:
      return std::nullopt;
    case LearnerKind::kOg:
    case LearnerKind::kOgPlus: {
      const double lhs = (x_next - probe).NormSq();
      const double rhs = dist_sq - 2.0 * gn * Dot(g, x_half - probe) -
                         2.0 * gh * gn * Dot(g, g_prev) + gn * gn * g.NormSq();
      return std::abs(lhs - rhs) / (1.0 + dist_sq);
    }
    case LearnerKind::kOptDaPlus: {
      const double gc = trace.gamma_current;
      const double inv_gap = 1.0 / gn - 1.0 / gc;
      const PlayerVector step = x - x_next;
      const double lhs = (x_next - probe).NormSq() / gn;
      const double rhs = dist_sq / gc - step.NormSq() / gc +
                         inv_gap * (trace.x_init - probe).NormSq() -
                         inv_gap * (trace.x_init - x_next).NormSq() -
                         2.0 * Dot(g, x_half - probe) -
                         2.0 * gh * Dot(g, g_prev) + 2.0 * Dot(g, step);
      return std::abs(lhs - rhs) / (1.0 + dist_sq);
    }
  }
  return std::nullopt;
}

MetricAccumulator::MetricAccumulator(
    std::vector<std::vector<PlayerVector>> benchmarks)
    : benchmarks_(std::move(benchmarks)) {
  regret_.reserve(benchmarks_.size());
  for (const auto& b : benchmarks_) {
    if (b.empty()) throw ConfigError("every player needs >= 1 benchmark");
    regret_.emplace_back(b.size(), 0.0);
  }
}

void MetricAccumulator::Observe(const Game& game, const JointAction& x_t,
                                const JointAction& v) {
  if (x_t.num_players() != regret_.size()) {
    throw StructuralError("metric accumulator: player count mismatch");
  }
  for (std::size_t i = 0; i < regret_.size(); ++i) {
    for (std::size_t b = 0; b < benchmarks_[i].size(); ++b) {
      regret_[i][b] += RegretIncrement(v, x_t, i, benchmarks_[i][b]);
    }
  }
  grad_energy_cum_ += v.NormSq();
  last_distance_ = DistanceToEquilibrium(game, x_t);
  ++rounds_;
}

void MetricAccumulator::ObserveResidual(double residual) {
  max_residual_ = std::max(max_residual_, residual);
}

double MetricAccumulator::MaxRegret(std::size_t player) const {
  const auto& r = regret_.at(player);
  return *std::max_element(r.begin(), r.end());
}

std::vector<PlayerVector> DefaultBenchmarks(const Game& game,
                                            std::size_t player, double radius) {
  if (!(radius >= 0.0)) throw ConfigError("benchmark radius must be >= 0");
  const PlayerVector& center = game.equilibria().points.front()[player];
  std::vector<PlayerVector> out{center};
  if (radius == 0.0) return out;
  for (std::size_t j = 0; j < center.dim(); ++j) {
    PlayerVector plus = center;
    PlayerVector minus = center;
    plus[j] += radius;
    minus[j] -= radius;
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
  }
  return out;
}

}  // namespace gamelab
