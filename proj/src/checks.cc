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
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <tuple>
#include <sstream>

#include "gamelab/errors.h"
#include "gamelab/harness.h"
#include "gamelab/learners.h"
#include "gamelab/schedules.h"

namespace gamelab {
namespace {

// Pinned tolerances.
constexpr double kResidualTol = 1e-9;
constexpr double kPlateauRatio = 1.5;
constexpr double kFlatSlope = 0.1;
constexpr double kSqrtSlopeLo = 0.35;
constexpr double kSqrtSlopeHi = 0.65;
constexpr double kHalfDistance = 0.5;
constexpr double kSingleRateSlope = 0.3;
constexpr double kEnergySlope = 0.9;
constexpr double kRateRetention = 0.5;
constexpr double kDistanceDecay = 0.1;
constexpr double kAdversarialSlope = 0.85;
constexpr int kLemmaInstances = 1000;
constexpr double kCoincidenceTol = 1e-9;

constexpr std::int64_t kEarlyRound = 100;

struct Curves {
  std::vector<double> regret;  // player 0, max over benchmarks
  std::vector<double> dist;
  std::vector<double> energy;
  // gamma_hat of each player at every round (zeros for opponents).
  std::vector<std::vector<double>> gamma_hat;
};

struct SuiteCurves {
  Curves mean;
  std::vector<Curves> per_seed;
  std::vector<std::string> errors;
};

SuiteCurves Collect(const ExperimentConfig& config,
                    const std::vector<std::uint64_t>& seeds) {
  const std::size_t horizon = static_cast<std::size_t>(config.horizon);
  const std::size_t n = config.game.num_players();
  SuiteCurves out;
  out.per_seed.resize(seeds.size());
  std::vector<std::string> errors(seeds.size());
  ParallelFor(seeds.size(), [&](std::size_t r) {
    Curves& c = out.per_seed[r];
    c.gamma_hat.assign(n, {});
    try {
      Simulate(config, seeds[r], [&](const RoundView& view) {
        c.regret.push_back(view.metrics->MaxRegret(0));
        c.dist.push_back(view.metrics->last_distance());
        c.energy.push_back(view.metrics->grad_energy_cum());
        for (std::size_t i = 0; i < n; ++i) {
          c.gamma_hat[i].push_back((*view.rates)[i].gamma_hat);
        }
      });
    } catch (const std::exception& e) {
      errors[r] = "seed " + std::to_string(seeds[r]) + ": " + e.what();
    }
  });
  for (auto& e : errors) {
    if (!e.empty()) out.errors.push_back(e);
  }
  if (!out.errors.empty()) return out;
  const double k = static_cast<double>(seeds.size());
  out.mean.regret.assign(horizon, 0.0);
  out.mean.dist.assign(horizon, 0.0);
  out.mean.energy.assign(horizon, 0.0);
  for (const Curves& c : out.per_seed) {
    for (std::size_t t = 0; t < horizon; ++t) {
      out.mean.regret[t] += c.regret[t] / k;
      out.mean.dist[t] += c.dist[t] / k;
      out.mean.energy[t] += c.energy[t] / k;
    }
  }
  return out;
}

// Value of a curve at round t (1-based).
double At(const std::vector<double>& curve, std::int64_t t) {
  return curve.at(static_cast<std::size_t>(t - 1));
}

std::vector<double> PositivePart(std::vector<double> v) {
  for (double& x : v) x = std::max(x, 0.0);
  return v;
}

ExperimentConfig BaseConfig(std::int64_t horizon) {
  ExperimentConfig c;
  c.game = Game::ScalarBilinear();
  c.horizon = horizon;
  c.benchmark_radius = 2.0;
  return c;
}

PlayerConfig Player(LearnerKind kind, ScheduleSpec schedule) {
  PlayerConfig p;
  p.algorithm = kind;
  p.schedule = std::move(schedule);
  return p;
}

ScheduleSpec TheoremConstant() {
  ScheduleSpec s;
  s.kind = ScheduleKind::kConstant;
  s.derived_from_theorem = true;
  return s;
}

ScheduleSpec Adaptive(double epsilon) {
  ScheduleSpec s;
  s.kind = ScheduleKind::kAdaptive;
  s.epsilon = epsilon;
  return s;
}

ScheduleSpec InverseSqrt(double scale) {
  ScheduleSpec s;
  s.kind = ScheduleKind::kInverseSqrt;
  s.scale_hat = scale;
  s.scale = scale;
  return s;
}

ExperimentConfig SelfPlay(std::int64_t horizon, const NoiseSpec& noise,
                          LearnerKind kind, const ScheduleSpec& schedule) {
  ExperimentConfig c = BaseConfig(horizon);
  c.noise = noise;
  c.players = {Player(kind, schedule), Player(kind, schedule)};
  return c;
}

NoiseSpec Additive(double sigma) {
  NoiseSpec n;
  n.sigma_add = sigma;
  return n;
}

NoiseSpec Multiplicative(double sigma_mult) {
  NoiseSpec n;
  n.sigma_mult = sigma_mult;
  return n;
}

class Report {
 public:
  explicit Report(std::string id) { result_.id = std::move(id); }

  void Stat(const std::string& name, double value) {
    result_.stats.emplace_back(name, value);
  }
  void Expect(bool ok, const std::string& what) {
    all_ok_ = all_ok_ && ok;
    if (!parts_.empty()) parts_ += "; ";
    parts_ += (ok ? "ok " : "FAIL ") + what;
  }
  // A run that aborted fails the criterion.
  bool Errors(const SuiteCurves& s, const std::string& label) {
    if (s.errors.empty()) return false;
    Expect(false, label + " aborted: " + s.errors.front());
    return true;
  }
  CheckResult Finish() {
    result_.passed = all_ok_;
    result_.summary = parts_;
    return result_;
  }

 private:
  CheckResult result_;
  bool all_ok_ = true;
  std::string parts_;
};

std::string Fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::int64_t HorizonOr(const CheckOptions& o, std::int64_t fallback) {
  return o.horizon.value_or(fallback);
}

CheckResult EnergyIdentities(const CheckOptions& o,
                             const std::vector<std::uint64_t>& seeds) {
  Report report("energy-identities");
  const std::int64_t horizon = HorizonOr(o, 1000);
  NoiseSpec bounded = Additive(0.5);
  bounded.bound_abs = 1.0;
  const std::vector<std::pair<std::string, NoiseSpec>> regimes = {
      {"noiseless", NoiseSpec{}},
      {"additive", Additive(0.5)},
      {"multiplicative", Multiplicative(1.0)},
      {"bounded", bounded}};
  ScheduleSpec poly;
  poly.kind = ScheduleKind::kOgPlusPoly;
  poly.derived_from_theorem = true;
  ScheduleSpec da_poly;
  da_poly.kind = ScheduleKind::kOptDaPoly;
  da_poly.derived_from_theorem = true;
  const std::vector<std::tuple<std::string, LearnerKind, ScheduleSpec>> runs = {
      {"og_plus/constant", LearnerKind::kOgPlus, TheoremConstant()},
      {"og_plus/poly", LearnerKind::kOgPlus, poly},
      {"og_plus/adaptive", LearnerKind::kOgPlus, Adaptive(0.25)},
      {"optda_plus/constant", LearnerKind::kOptDaPlus, TheoremConstant()},
      {"optda_plus/poly", LearnerKind::kOptDaPlus, da_poly},
      {"optda_plus/adaptive", LearnerKind::kOptDaPlus, Adaptive(0.25)}};
  double worst = 0.0;
  for (const auto& [label, kind, schedule] : runs) {
    for (const auto& [regime, noise] : regimes) {
      ExperimentConfig c = SelfPlay(horizon, noise, kind, schedule);
      c.checks = {RunCheck::kEnergyIdentity, RunCheck::kDualAveraging};
      std::vector<double> max_res(seeds.size(), 0.0);
      std::vector<std::string> errors(seeds.size());
      ParallelFor(seeds.size(), [&](std::size_t r) {
        try {
          max_res[r] = Simulate(c, seeds[r], nullptr).max_residual();
        } catch (const std::exception& e) {
          errors[r] = e.what();
        }
      });
      for (std::size_t r = 0; r < seeds.size(); ++r) {
        if (!errors[r].empty()) {
          report.Expect(false, label + "/" + regime + " aborted: " + errors[r]);
        }
        worst = std::max(worst, max_res[r]);
      }
    }
  }
  report.Stat("max_residual", worst);
  report.Expect(worst <= kResidualTol,
                "max residual " + Fmt(worst) + " <= 1e-09 over " +
                    std::to_string(runs.size() * regimes.size()) +
                    " setups x 3 probes");
  return report.Finish();
}

CheckResult ConstantRegretMultiplicative(const CheckOptions& o,
                                         const std::vector<std::uint64_t>& seeds) {
  Report report("constant-regret-multiplicative");
  const std::int64_t horizon = HorizonOr(o, 100000);
  for (LearnerKind kind : {LearnerKind::kOgPlus, LearnerKind::kOptDaPlus}) {
    const std::string label = LearnerKindName(kind);
    const SuiteCurves s = Collect(
        SelfPlay(horizon, Multiplicative(1.0), kind, TheoremConstant()), seeds);
    if (report.Errors(s, label)) continue;
    const double end = At(s.mean.regret, horizon);
    const double tenth = At(s.mean.regret, horizon / 10);
    const double ratio = end / std::max(tenth, 1.0);
    const double slope = LoglogSlope(PositivePart(s.mean.regret));
    report.Stat(label + ".regret_T", end);
    report.Stat(label + ".ratio", ratio);
    report.Stat(label + ".slope", slope);
    report.Expect(ratio <= kPlateauRatio,
                  label + " Reg(T)/max(Reg(T/10),1) = " + Fmt(ratio) + " <= 1.5");
    report.Expect(slope <= kFlatSlope,
                  label + " slope " + Fmt(slope) + " <= 0.1");
  }
  return report.Finish();
}

CheckResult SqrtTAdditive(const CheckOptions& o,
                          const std::vector<std::uint64_t>& seeds) {
  Report report("sqrtT-additive");
  const std::int64_t horizon = HorizonOr(o, 100000);
  ScheduleSpec poly;
  poly.kind = ScheduleKind::kOptDaPoly;
  poly.derived_from_theorem = true;
  const SuiteCurves s = Collect(
      SelfPlay(horizon, Additive(0.5), LearnerKind::kOptDaPlus, poly), seeds);
  if (!report.Errors(s, "optda_plus")) {
    const double slope = LoglogSlope(s.mean.regret);
    report.Stat("slope", slope);
    report.Expect(slope >= kSqrtSlopeLo && slope <= kSqrtSlopeHi,
                  "regret slope " + Fmt(slope) + " in [0.35, 0.65]");
  }
  return report.Finish();
}

CheckResult BaselineFailure(const CheckOptions& o,
                            const std::vector<std::uint64_t>& seeds) {
  Report report("baseline-failure");
  const std::int64_t horizon = HorizonOr(o, 10000);
  const std::vector<std::pair<LearnerKind, ScheduleSpec>> runs = {
      {LearnerKind::kGda, InverseSqrt(0.1)},
      {LearnerKind::kOg, InverseSqrt(0.1)},
      {LearnerKind::kOgPlus, Adaptive(0.25)}};
  for (const auto& [kind, schedule] : runs) {
    const std::string label = LearnerKindName(kind);
    const SuiteCurves s =
        Collect(SelfPlay(horizon, Additive(0.5), kind, schedule), seeds);
    if (report.Errors(s, label)) continue;
    const double early = At(s.mean.dist, kEarlyRound);
    const double end = At(s.mean.dist, horizon);
    report.Stat(label + ".dist_100", early);
    report.Stat(label + ".dist_T", end);
    if (kind == LearnerKind::kOgPlus) {
      report.Expect(end < kHalfDistance * early,
                    label + " dist(T)/dist(100) = " + Fmt(end / early) +
                        " < 0.5");
    } else {
      report.Expect(end > early, label + " dist(T)/dist(100) = " +
                                     Fmt(end / early) + " > 1");
    }
  }
  return report.Finish();
}

CheckResult SeparationTenX(const CheckOptions& o,
                           const std::vector<std::uint64_t>& seeds) {
  Report report("separation-10x");
  const std::int64_t horizon = HorizonOr(o, 100000);
  const double gamma =
      SafeConstantRates(RateFamily::kOgPlus, 2, 1.0, 1.0).gamma;
  ScheduleSpec single;
  single.kind = ScheduleKind::kConstant;
  single.gamma_hat = gamma;
  single.gamma = gamma;
  ScheduleSpec separated = single;
  separated.hat_over_gamma = 10.0;

  const SuiteCurves plus = Collect(
      SelfPlay(horizon, Multiplicative(1.0), LearnerKind::kOgPlus, separated),
      seeds);
  if (!report.Errors(plus, "og_plus")) {
    const double slope = LoglogSlope(PositivePart(plus.mean.regret));
    report.Stat("og_plus.slope", slope);
    report.Expect(slope <= kFlatSlope,
                  "og_plus slope " + Fmt(slope) + " <= 0.1");
  }
  const SuiteCurves og = Collect(
      SelfPlay(horizon, Multiplicative(1.0), LearnerKind::kOg, single), seeds);
  if (!report.Errors(og, "og")) {
    const double slope = LoglogSlope(PositivePart(og.mean.regret));
    report.Stat("og.slope", slope);
    report.Expect(slope >= kSingleRateSlope,
                  "og slope " + Fmt(slope) + " >= 0.3");
  }
  return report.Finish();
}

CheckResult GradEnergyExponent(const CheckOptions& o,
                               const std::vector<std::uint64_t>& seeds) {
  Report report("grad-energy-exponent");
  const std::int64_t horizon = HorizonOr(o, 100000);
  const SuiteCurves s = Collect(
      SelfPlay(horizon, Additive(0.5), LearnerKind::kOptDaPlus, Adaptive(0.25)),
      seeds);
  if (!report.Errors(s, "optda_plus")) {
    const double slope = LoglogSlope(s.mean.energy);
    report.Stat("slope", slope);
    report.Expect(slope <= kEnergySlope,
                  "energy slope " + Fmt(slope) + " <= 0.9");
  }
  return report.Finish();
}

CheckResult AdaptiveStabilize(const CheckOptions& o,
                              const std::vector<std::uint64_t>& seeds) {
  Report report("adaptive-stabilize");
  const std::int64_t horizon = HorizonOr(o, 100000);
  const SuiteCurves s =
      Collect(SelfPlay(horizon, Multiplicative(1.0), LearnerKind::kOptDaPlus,
                       Adaptive(0.25)),
              seeds);
  if (!report.Errors(s, "optda_plus")) {
    double worst = std::numeric_limits<double>::infinity();
    for (const Curves& c : s.per_seed) {
      for (const auto& g : c.gamma_hat) {
        const double ratio = At(g, horizon) / At(g, horizon / 10);
        worst = std::min(worst, ratio);
      }
    }
    const double decay = At(s.mean.dist, horizon) / At(s.mean.dist, kEarlyRound);
    report.Stat("min_gamma_hat_ratio", worst);
    report.Stat("dist_ratio", decay);
    report.Expect(worst >= kRateRetention,
                  "min per-seed gamma_hat(T)/gamma_hat(T/10) = " + Fmt(worst) +
                      " >= 0.5");
    report.Expect(decay <= kDistanceDecay,
                  "dist(T)/dist(100) = " + Fmt(decay) + " <= 0.1");
  }
  return report.Finish();
}

CheckResult AdversarialFallback(const CheckOptions& o,
                                const std::vector<std::uint64_t>& seeds) {
  Report report("adversarial-fallback");
  const std::int64_t horizon = HorizonOr(o, 100000);
  ExperimentConfig c = BaseConfig(horizon);
  c.noise = Additive(0.5);
  ScheduleSpec adv;
  adv.kind = ScheduleKind::kAdversarialPoly;
  adv.epsilon = 0.25;
  c.players = {Player(LearnerKind::kOptDaPlus, adv)};
  OpponentSpec opp;
  opp.player = 1;
  opp.kind = OpponentKind::kOscillator;
  opp.amplitude = 1.0;
  c.opponents = {opp};
  const SuiteCurves s = Collect(c, seeds);
  if (!report.Errors(s, "optda_plus")) {
    const double slope = LoglogSlope(s.mean.regret);
    report.Stat("slope", slope);
    report.Expect(slope <= kAdversarialSlope,
                  "regret slope " + Fmt(slope) + " <= 0.85");
  }
  return report.Finish();
}

CheckResult AdagradLemma(const CheckOptions&,
                         const std::vector<std::uint64_t>& seeds) {
  Report report("adagrad-lemma");
  RngStream rng(seeds.front(), 0);
  int held = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kLemmaInstances; ++i) {
    const int len = 1 + static_cast<int>(rng.Uniform() * 64.0);
    // Mix of tiny, moderate and large terms, with exact zeros.
    const double scale = std::pow(10.0, -3.0 + 6.0 * rng.Uniform());
    std::vector<double> a(static_cast<std::size_t>(len));
    for (double& v : a) v = rng.Uniform() < 0.2 ? 0.0 : scale * rng.Uniform();
    const double eps = std::pow(10.0, -4.0 + 6.0 * rng.Uniform());
    const double alpha = 0.99 * rng.Uniform();
    const auto sides = AdagradLemmaEvaluate(a, eps, alpha);
    worst_margin = std::min(worst_margin, sides.rhs - sides.lhs);
    if (AdagradLemmaCheck(a, eps, alpha)) ++held;
  }
  report.Stat("held", held);
  report.Stat("min_margin", worst_margin);
  report.Expect(held == kLemmaInstances,
                std::to_string(held) + "/" + std::to_string(kLemmaInstances) +
                    " instances satisfy the inequality");
  return report.Finish();
}

CheckResult ConstantRateCoincidence(const CheckOptions& o,
                                    const std::vector<std::uint64_t>& seeds) {
  Report report("constant-rate-coincidence");
  const std::int64_t horizon = HorizonOr(o, 1000);
  const Game game = Game::ScalarBilinear();
  const JointAction x1({PlayerVector(1, 1.0), PlayerVector(1, 1.0)});
  const RatePair rates = SafeConstantRates(RateFamily::kOgPlus, 2, 1.0, 1.0);
  const std::vector<std::pair<std::string, NoiseSpec>> regimes = {
      {"noiseless", NoiseSpec{}},
      {"multiplicative", Multiplicative(0.5)},
      {"additive", Additive(0.5)}};
  double worst = 0.0;
  for (const auto& [label, noise] : regimes) {
    for (std::uint64_t seed : seeds) {
      const EquivalenceReport r = EqualRateEquivalenceCheck(
          horizon, game, noise, rates, x1, seed, kCoincidenceTol);
      worst = std::max(worst, r.max_gap);
    }
  }
  report.Stat("max_gap", worst);
  report.Expect(worst <= kCoincidenceTol,
                "max trajectory gap " + Fmt(worst) + " <= 1e-09");
  return report.Finish();
}

using CriterionFn =
    std::function<CheckResult(const CheckOptions&, const std::vector<std::uint64_t>&)>;

const std::vector<std::pair<std::string, CriterionFn>>& Registry() {
  static const std::vector<std::pair<std::string, CriterionFn>> registry = {
      {"energy-identities", EnergyIdentities},
      {"constant-regret-multiplicative", ConstantRegretMultiplicative},
      {"sqrtT-additive", SqrtTAdditive},
      {"baseline-failure", BaselineFailure},
      {"separation-10x", SeparationTenX},
      {"grad-energy-exponent", GradEnergyExponent},
      {"adaptive-stabilize", AdaptiveStabilize},
      {"adversarial-fallback", AdversarialFallback},
      {"adagrad-lemma", AdagradLemma},
      {"constant-rate-coincidence", ConstantRateCoincidence},
  };
  return registry;
}

}  // namespace

std::vector<std::uint64_t> DefaultCheckSeeds() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 20; ++s) seeds.push_back(s);
  return seeds;
}

const std::vector<std::string>& CriterionIds() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : Registry()) out.push_back(id);
    return out;
  }();
  return ids;
}

bool IsCriterion(const std::string& id) {
  const auto& ids = CriterionIds();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

CheckResult RunCriterion(const std::string& id, const CheckOptions& options) {
  for (const auto& [name, fn] : Registry()) {
    if (name != id) continue;
    if (options.horizon && *options.horizon < 1000) {
      throw ConfigError("criterion horizon override must be >= 1000");
    }
    const std::vector<std::uint64_t> seeds =
        options.seeds.empty() ? DefaultCheckSeeds() : options.seeds;
    return fn(options, seeds);
  }
  throw ConfigError("unknown criterion '" + id + "'");
}

}  // namespace gamelab
