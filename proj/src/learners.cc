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

#include "gamelab/learners.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "gamelab/errors.h"

namespace gamelab {

std::string LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kGda:
      return "gda";
    case LearnerKind::kOg:
      return "og";
    case LearnerKind::kOgPlus:
      return "og_plus";
    case LearnerKind::kOptDaPlus:
      return "optda_plus";
  }
  return "unknown";
}

LearnerKind ParseLearnerKind(const std::string& name) {
  for (LearnerKind kind : {LearnerKind::kGda, LearnerKind::kOg,
                           LearnerKind::kOgPlus, LearnerKind::kOptDaPlus}) {
    if (LearnerKindName(kind) == name) return kind;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

bool IsOptimistic(LearnerKind kind) { return kind != LearnerKind::kGda; }

RateFamily DefaultRateFamily(LearnerKind kind) {
  return kind == LearnerKind::kOptDaPlus ? RateFamily::kOptDaPlus
                                         : RateFamily::kOgPlus;
}

Learner::Learner(LearnerKind kind, PlayerVector x_init, Schedule schedule,
                 std::size_t player)
    : kind_(kind),
      player_(player),
      x_(x_init),
      x_half_(x_init),
      x_init_(std::move(x_init)),
      g_prev_(ZeroFeedback(x_.dim() == 0 ? 1 : x_.dim(), player)),
      g_sum_(x_.dim()),
      schedule_(std::move(schedule)) {
  if (x_init_.dim() == 0) throw StructuralError("learner with dimension 0");
  if (!x_init_.IsFinite()) throw ConfigError("initial point is not finite");
}

RoundRates Learner::BeginRound() {
  if (round_open_) {
    throw ContractViolation("BeginRound called twice in round " +
                            std::to_string(t_));
  }
  RoundRates rates;
  const RatePair current = schedule_.RatesAt(t_);
  rates.hat_state_round = schedule_.state().k;
  // g_{t-1} and ||X_{t-1} - X_t||^2 only enter the rates of round t+1.
  if (t_ >= 2) schedule_.Absorb(g_prev_, last_diff_sq_);
  if (kind_ == LearnerKind::kGda || kind_ == LearnerKind::kOg) {
    rates.gamma_hat = current.gamma;
    rates.gamma_next = current.gamma;
    rates.next_state_round = rates.hat_state_round;
  } else {
    rates.gamma_hat = current.gamma_hat;
    rates.next_state_round = schedule_.state().k;
    rates.gamma_next = schedule_.RatesAt(t_ + 1).gamma;
  }
  if (!(rates.gamma_next <= rates.gamma_hat)) {
    throw RunError("player " + std::to_string(player_) + ", round " +
                   std::to_string(t_) + ": update rate " +
                   std::to_string(rates.gamma_next) +
                   " exceeds extrapolation rate " +
                   std::to_string(rates.gamma_hat));
  }
  round_open_ = true;
  return rates;
}

const PlayerVector& Learner::Extrapolate(const RoundRates& rates) {
  x_half_ = x_;
  if (IsOptimistic(kind_)) x_half_.AddScaled(-rates.gamma_hat, g_prev_.g);
  return x_half_;
}

RoundTrace Learner::Update(const FeedbackSample& g, const RoundRates& rates) {
  if (g.g.dim() != x_.dim()) {
    throw StructuralError("feedback dimension does not match player " +
                          std::to_string(player_));
  }
  if (!g.g.IsFinite()) {
    throw RunError("non-finite feedback at round " + std::to_string(t_) +
                   ", player " + std::to_string(player_));
  }
  RoundTrace trace;
  trace.kind = kind_;
  trace.t = t_;
  trace.x_t = x_;
  trace.x_half = x_half_;
  trace.g = g.g;
  trace.g_prev = g_prev_.g;
  trace.x_init = x_init_;
  trace.gamma_hat = rates.gamma_hat;
  trace.gamma_next = rates.gamma_next;
  trace.gamma_current = t_ == 1 ? rates.gamma_next : gamma_current_;

  switch (kind_) {
    case LearnerKind::kGda:
    case LearnerKind::kOg:
    case LearnerKind::kOgPlus:
      x_.AddScaled(-rates.gamma_next, g.g);
      break;
    case LearnerKind::kOptDaPlus:
      g_sum_ += g.g;
      x_ = x_init_;
      x_.AddScaled(-rates.gamma_next, g_sum_);
      break;
  }
  if (!x_.IsFinite()) {
    throw RunError("iterate diverged to a non-finite value at round " +
                   std::to_string(t_) + ", player " + std::to_string(player_));
  }
  trace.x_next = x_;
  last_diff_sq_ = (trace.x_t - x_).NormSq();
  g_prev_ = g;
  gamma_current_ = rates.gamma_next;
  round_open_ = false;
  ++t_;
  return trace;
}

EquivalenceReport EqualRateEquivalenceCheck(std::int64_t horizon,
                                            const Game& game,
                                            const NoiseSpec& noise,
                                            RatePair rates,
                                            const JointAction& x_init,
                                            std::uint64_t seed,
                                            double tolerance) {
  game.CheckShape(x_init);
  ScheduleSpec spec;
  spec.kind = ScheduleKind::kConstant;
  spec.gamma_hat = rates.gamma_hat;
  spec.gamma = rates.gamma;
  const std::size_t n = game.num_players();
  const TheoremContext context{n, game.lipschitz(), noise.sigma_mult};

  struct Side {
    std::vector<Learner> learners;
    std::vector<RngStream> streams;
  };
  auto make_side = [&](LearnerKind kind) {
    Side side;
    for (std::size_t i = 0; i < n; ++i) {
      side.learners.emplace_back(kind, x_init[i],
                                 Schedule(spec, DefaultRateFamily(kind), context),
                                 i);
      side.streams.emplace_back(seed, NoiseStreamId(i));
    }
    return side;
  };
  Side og = make_side(LearnerKind::kOgPlus);
  Side da = make_side(LearnerKind::kOptDaPlus);

  auto step = [&](Side& side, std::int64_t t) {
    std::vector<RoundRates> round_rates;
    std::vector<PlayerVector> played;
    for (auto& learner : side.learners) {
      round_rates.push_back(learner.BeginRound());
      played.push_back(learner.Extrapolate(round_rates.back()));
    }
    const JointAction v = game.PayoffGradient(JointAction(played));
    for (std::size_t i = 0; i < n; ++i) {
      const FeedbackSample g = SampleFeedback(v[i], noise, side.streams[i], i, t);
      side.learners[i].Update(g, round_rates[i]);
    }
  };

  EquivalenceReport report;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    step(og, t);
    step(da, t);
    for (std::size_t i = 0; i < n; ++i) {
      const double gap =
          std::sqrt((og.learners[i].x() - da.learners[i].x()).NormSq());
      report.max_gap = std::max(report.max_gap, gap);
    }
    report.rounds = t;
  }
  report.agree = report.max_gap <= tolerance;
  return report;
}

}  // namespace gamelab
