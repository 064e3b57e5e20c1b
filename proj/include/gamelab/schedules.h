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

#ifndef GAMELAB_SCHEDULES_H_
#define GAMELAB_SCHEDULES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "gamelab/noise.h"

namespace gamelab {

// Which step-size condition a theorem-derived schedule must satisfy.
enum class RateFamily { kOgPlus, kOptDaPlus };

enum class ScheduleKind {
  kConstant,
  // gamma_hat = c_hat / (t^{1/4} sqrt(log(t+1))), gamma = c / (sqrt(t) log(t+1))
  kOgPlusPoly,
  // gamma_hat = c_hat / t^{1/4}, gamma = c / sqrt(t)
  kOptDaPoly,
  // gamma_hat = c_hat / t^{1/2 - eps}, gamma = c / sqrt(t)
  kAdversarialPoly,
  // gamma_hat = c_hat / sqrt(t+1), gamma = c / sqrt(t+1); the baseline
  // sequence used for GDA and single-rate OG
  kInverseSqrt,
  // AdaGrad-style rates driven by the cumulative feedback energy
  kAdaptive,
};

std::string ScheduleKindName(ScheduleKind kind);
ScheduleKind ParseScheduleKind(const std::string& name);
std::string RateFamilyName(RateFamily family);
RateFamily ParseRateFamily(const std::string& name);

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::kConstant;
  double epsilon = 0.25;
  double scale_hat = 1.0;
  double scale = 1.0;
  // Constant kind: use the safe theorem rates. Poly kinds: cap both
  // sequences by the safe theorem rates.
  bool derived_from_theorem = false;
  // Constant kind only.
  double gamma_hat = 0.0;
  double gamma = 0.0;
  // Constant kind only: gamma_hat := hat_over_gamma * gamma.
  std::optional<double> hat_over_gamma;
  // Overrides the family implied by the learner kind.
  std::optional<RateFamily> family;

  void Validate() const;
};

struct RatePair {
  double gamma_hat = 0.0;
  double gamma = 0.0;
};

// Largest constant rates allowed by the step-size conditions of the OG+ and
// OptDA+ regret bounds. The 1/sigma_mult branch is dropped when
// sigma_mult = 0.
RatePair SafeConstantRates(RateFamily family, std::size_t num_players,
                           double lipschitz, double sigma_mult);

// Deterministic decaying schedules; `cap` bounds each sequence from above.
RatePair PolyRates(const ScheduleSpec& spec, std::int64_t t,
                   std::optional<RatePair> cap = std::nullopt);

// Running sums behind the adaptive rule.
//   s       = sum_{s<=k} ||g_s||^2
//   s_prime = sum_{s<=k} ||X_s - X_{s+1}||^2
struct ScheduleState {
  double s = 0.0;
  double s_prime = 0.0;
  std::int64_t k = 0;
};

// Rates of round t. Requires state.k == max(t - 2, 0): the feedback of
// round t-1 must not have been absorbed yet.
RatePair AdaptiveRates(const ScheduleState& state, std::int64_t t,
                       double epsilon);

ScheduleState Absorb(ScheduleState state, const FeedbackSample& g,
                     double iterate_diff_norm_sq);

// sum_t a_t / (eps + sum_{s<=t} a_s)^alpha <= (sum_t a_t)^{1-alpha} / (1-alpha)
struct AdagradLemmaSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
AdagradLemmaSides AdagradLemmaEvaluate(std::span<const double> a, double eps,
                                       double alpha);
bool AdagradLemmaCheck(std::span<const double> a, double eps, double alpha);

// Quantities a theorem-derived schedule needs from the surrounding game.
struct TheoremContext {
  std::size_t num_players = 1;
  double lipschitz = 1.0;
  double sigma_mult = 0.0;
};

// A per-player schedule: the spec, its resolved constants and the running
// state. Every rate request is checked against the state's round counter.
class Schedule {
 public:
  Schedule(ScheduleSpec spec, RateFamily family, TheoremContext context);

  // (gamma_hat_t, gamma_t). Throws ContractViolation unless
  // state().k == max(t - 2, 0).
  RatePair RatesAt(std::int64_t t) const;
  void Absorb(const FeedbackSample& g, double iterate_diff_norm_sq);

  const ScheduleSpec& spec() const { return spec_; }
  const ScheduleState& state() const { return state_; }
  std::optional<RatePair> cap() const { return cap_; }

 private:
  ScheduleSpec spec_;
  RateFamily family_;
  std::optional<RatePair> cap_;
  RatePair constant_{};
  ScheduleState state_;
};

}  // namespace gamelab

#endif  // GAMELAB_SCHEDULES_H_
