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

#include "gamelab/schedules.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "gamelab/errors.h"

namespace gamelab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckPositive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("schedule ") + name +
                      " must be finite and > 0");
  }
}

}  // namespace

std::string ScheduleKindName(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kConstant:
      return "constant";
    case ScheduleKind::kOgPlusPoly:
      return "og_plus_poly";
    case ScheduleKind::kOptDaPoly:
      return "optda_poly";
    case ScheduleKind::kAdversarialPoly:
      return "adversarial_poly";
    case ScheduleKind::kInverseSqrt:
      return "inverse_sqrt";
    case ScheduleKind::kAdaptive:
      return "adaptive";
  }
  return "unknown";
}

ScheduleKind ParseScheduleKind(const std::string& name) {
  for (ScheduleKind kind :
       {ScheduleKind::kConstant, ScheduleKind::kOgPlusPoly,
        ScheduleKind::kOptDaPoly, ScheduleKind::kAdversarialPoly,
        ScheduleKind::kInverseSqrt, ScheduleKind::kAdaptive}) {
    if (ScheduleKindName(kind) == name) return kind;
  }
  throw ConfigError("unknown schedule kind '" + name + "'");
}

std::string RateFamilyName(RateFamily family) {
  return family == RateFamily::kOgPlus ? "og_plus" : "optda_plus";
}

RateFamily ParseRateFamily(const std::string& name) {
  if (name == "og_plus") return RateFamily::kOgPlus;
  if (name == "optda_plus") return RateFamily::kOptDaPlus;
  throw ConfigError("unknown rate family '" + name + "'");
}

void ScheduleSpec::Validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 0.25)) {
    throw ConfigError("schedule epsilon must lie in [0, 1/4]");
  }
  CheckPositive(scale_hat, "scale_hat");
  CheckPositive(scale, "scale");
  if (hat_over_gamma) {
    if (kind != ScheduleKind::kConstant) {
      throw ConfigError("hat_over_gamma only applies to constant schedules");
    }
    if (!(*hat_over_gamma >= 1.0) || !std::isfinite(*hat_over_gamma)) {
      throw ConfigError("hat_over_gamma must be >= 1");
    }
  }
  if (kind == ScheduleKind::kConstant && !derived_from_theorem) {
    CheckPositive(gamma, "gamma");
    if (!hat_over_gamma) {
      CheckPositive(gamma_hat, "gamma_hat");
      if (gamma > gamma_hat) {
        throw ConfigError("constant schedule needs gamma <= gamma_hat");
      }
    }
  }
}

RatePair SafeConstantRates(RateFamily family, std::size_t num_players,
                           double lipschitz, double sigma_mult) {
  if (num_players == 0) throw StructuralError("safe rates need N >= 1");
  if (!(lipschitz > 0.0)) throw StructuralError("safe rates need L > 0");
  if (!(sigma_mult >= 0.0)) {
    throw StructuralError("safe rates need sigma_mult >= 0");
  }
  const double n = static_cast<double>(num_players);
  const double l = lipschitz;
  const double m = sigma_mult;
  RatePair out;
  if (family == RateFamily::kOgPlus) {
    const double first = 1.0 / (3.0 * l * std::sqrt(2.0 * n * (1.0 + m)));
    const double second =
        m > 0.0 ? 1.0 / (2.0 * (4.0 * n + 1.0) * l * m) : kInf;
    out.gamma_hat = std::min(first, second);
    out.gamma = out.gamma_hat / (2.0 * (1.0 + m));
  } else {
    const double first = 1.0 / std::sqrt(3.0 * n * (1.0 + m));
    const double second = m > 0.0 ? 1.0 / ((4.0 * n + 1.0) * m) : kInf;
    out.gamma_hat = std::min(first, second) / (2.0 * l);
    out.gamma = out.gamma_hat / (4.0 * (1.0 + m));
  }
  return out;
}

RatePair PolyRates(const ScheduleSpec& spec, std::int64_t t,
                   std::optional<RatePair> cap) {
  if (t < 1) throw StructuralError("poly rates need t >= 1");
  const double tt = static_cast<double>(t);
  RatePair out;
  switch (spec.kind) {
    case ScheduleKind::kOgPlusPoly: {
      const double log_t = std::log(tt + 1.0);
      out.gamma_hat = spec.scale_hat / (std::pow(tt, 0.25) * std::sqrt(log_t));
      out.gamma = spec.scale / (std::sqrt(tt) * log_t);
      break;
    }
    case ScheduleKind::kOptDaPoly:
      out.gamma_hat = spec.scale_hat / std::pow(tt, 0.25);
      out.gamma = spec.scale / std::sqrt(tt);
      break;
    case ScheduleKind::kAdversarialPoly:
      out.gamma_hat = spec.scale_hat / std::pow(tt, 0.5 - spec.epsilon);
      out.gamma = spec.scale / std::sqrt(tt);
      break;
    case ScheduleKind::kInverseSqrt:
      out.gamma_hat = spec.scale_hat / std::sqrt(tt + 1.0);
      out.gamma = spec.scale / std::sqrt(tt + 1.0);
      break;
    default:
      throw StructuralError("PolyRates called with schedule kind " +
                            ScheduleKindName(spec.kind));
  }
  if (cap) {
    out.gamma_hat = std::min(out.gamma_hat, cap->gamma_hat);
    out.gamma = std::min(out.gamma, cap->gamma);
  }
  return out;
}

RatePair AdaptiveRates(const ScheduleState& state, std::int64_t t,
                       double epsilon) {
  if (t < 1) throw StructuralError("adaptive rates need t >= 1");
  const std::int64_t expected = std::max<std::int64_t>(t - 2, 0);
  if (state.k != expected) {
    throw ContractViolation(
        "adaptive rates for round " + std::to_string(t) +
        " need sums through round " + std::to_string(expected) +
        " but the state has absorbed round " + std::to_string(state.k));
  }
  RatePair out;
  out.gamma_hat = 1.0 / std::pow(1.0 + state.s, 0.5 - epsilon);
  out.gamma = 1.0 / std::sqrt(1.0 + state.s + state.s_prime);
  return out;
}

ScheduleState Absorb(ScheduleState state, const FeedbackSample& g,
                     double iterate_diff_norm_sq) {
  if (!(iterate_diff_norm_sq >= 0.0)) {
    throw StructuralError("iterate difference must be >= 0");
  }
  state.s += g.g.NormSq();
  state.s_prime += iterate_diff_norm_sq;
  state.k += 1;
  return state;
}

AdagradLemmaSides AdagradLemmaEvaluate(std::span<const double> a, double eps,
                                       double alpha) {
  if (!(eps > 0.0)) throw StructuralError("AdaGrad lemma needs eps > 0");
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw StructuralError("AdaGrad lemma needs alpha in [0, 1)");
  }
  AdagradLemmaSides sides;
  double running = 0.0;
  for (double v : a) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw StructuralError("AdaGrad lemma needs finite a_t >= 0");
    }
    running += v;
    sides.lhs += v / std::pow(eps + running, alpha);
  }
  sides.rhs = std::pow(running, 1.0 - alpha) / (1.0 - alpha);
  return sides;
}

bool AdagradLemmaCheck(std::span<const double> a, double eps, double alpha) {
  const AdagradLemmaSides sides = AdagradLemmaEvaluate(a, eps, alpha);
  // Allow a few ulps of accumulated rounding on the right-hand side.
  return sides.lhs <= sides.rhs + 1e-12 * std::max(1.0, sides.rhs);
}

Schedule::Schedule(ScheduleSpec spec, RateFamily family,
                   TheoremContext context)
    : spec_(std::move(spec)), family_(spec_.family.value_or(family)) {
  spec_.Validate();
  const bool needs_safe = spec_.derived_from_theorem &&
                          spec_.kind != ScheduleKind::kAdaptive;
  if (needs_safe) {
    cap_ = SafeConstantRates(family_, context.num_players, context.lipschitz,
                             context.sigma_mult);
  }
  if (spec_.kind == ScheduleKind::kConstant) {
    constant_ = cap_ ? *cap_ : RatePair{spec_.gamma_hat, spec_.gamma};
    if (spec_.hat_over_gamma) {
      constant_.gamma_hat = *spec_.hat_over_gamma * constant_.gamma;
    }
  }
}

RatePair Schedule::RatesAt(std::int64_t t) const {
  if (t < 1) throw StructuralError("rates requested for round < 1");
  const std::int64_t expected = std::max<std::int64_t>(t - 2, 0);
  if (state_.k != expected) {
    throw ContractViolation(
        "rates for round " + std::to_string(t) + " requested from a state "
        "that absorbed round " + std::to_string(state_.k) +
        " (expected " + std::to_string(expected) + ")");
  }
  switch (spec_.kind) {
    case ScheduleKind::kConstant:
      return constant_;
    case ScheduleKind::kAdaptive:
      return AdaptiveRates(state_, t, spec_.epsilon);
    default:
      return PolyRates(spec_, t, cap_);
  }
}

void Schedule::Absorb(const FeedbackSample& g, double iterate_diff_norm_sq) {
  state_ = gamelab::Absorb(state_, g, iterate_diff_norm_sq);
}

}  // namespace gamelab
