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

#include "gamelab/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "gamelab/errors.h"

namespace gamelab {
namespace {

using nlohmann::json;

constexpr double kIdentityTolerance = 1e-9;
constexpr double kReconstructionTolerance = 1e-12;
constexpr std::uint64_t kProbeStreamId = 0;

void CheckKeys(const json& obj, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double GetNumber(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(where + "." + key + " must be a number");
  }
  return v.get<double>();
}

double NumberOr(const json& obj, const char* key, double fallback,
                const std::string& where) {
  return obj.contains(key) ? GetNumber(obj, key, where) : fallback;
}

std::vector<double> GetVector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(where + " must be a non-empty array of numbers");
  }
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(where + " must contain numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Eigen::MatrixXd GetMatrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(where + " must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : v) rows.push_back(GetVector(row, where + " row"));
  const std::size_t cols = rows.front().size();
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ConfigError(where + " is ragged");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

std::optional<double> OptionalNumber(const json& obj, const char* key,
                                     const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return GetNumber(obj, key, where);
}

Game ParseGame(const json& g) {
  CheckKeys(g, "game", {"kind", "A", "B", "b", "dims", "lipschitz"});
  if (!g.contains("kind") || !g.at("kind").is_string()) {
    throw ConfigError("game.kind must be \"bilinear\" or \"quadratic\"");
  }
  const std::string kind = g.at("kind").get<std::string>();
  const std::optional<double> lipschitz = OptionalNumber(g, "lipschitz", "game");
  if (kind == "bilinear") {
    if (g.contains("B") || g.contains("b") || g.contains("dims")) {
      throw ConfigError("bilinear game only takes A and lipschitz");
    }
    const Eigen::MatrixXd a = g.contains("A") ? GetMatrix(g.at("A"), "game.A")
                                              : Eigen::MatrixXd::Ones(1, 1);
    return Game::Bilinear(a, lipschitz);
  }
  if (kind == "quadratic") {
    if (g.contains("A")) throw ConfigError("quadratic game does not take A");
    if (!g.contains("B") || !g.contains("b") || !g.contains("dims")) {
      throw ConfigError("quadratic game needs dims, B and b");
    }
    std::vector<std::size_t> dims;
    for (double d : GetVector(g.at("dims"), "game.dims")) {
      if (d < 1 || d != std::floor(d)) {
        throw ConfigError("game.dims must be positive integers");
      }
      dims.push_back(static_cast<std::size_t>(d));
    }
    const std::vector<double> b = GetVector(g.at("b"), "game.b");
    return Game::Quadratic(
        std::move(dims), GetMatrix(g.at("B"), "game.B"),
        Eigen::Map<const Eigen::VectorXd>(b.data(),
                                          static_cast<Eigen::Index>(b.size())),
        lipschitz);
  }
  throw ConfigError("unknown game kind '" + kind + "'");
}

NoiseSpec ParseNoise(const json& n) {
  CheckKeys(n, "noise", {"sigma_add", "sigma_mult", "bound_abs"});
  NoiseSpec spec;
  spec.sigma_add = NumberOr(n, "sigma_add", 0.0, "noise");
  spec.sigma_mult = NumberOr(n, "sigma_mult", 0.0, "noise");
  spec.bound_abs = OptionalNumber(n, "bound_abs", "noise");
  spec.Validate();
  return spec;
}

ScheduleSpec ParseSchedule(const json& s, const std::string& where) {
  CheckKeys(s, where,
            {"kind", "epsilon", "scale_hat", "scale", "derived_from_theorem",
             "gamma_hat", "gamma", "hat_over_gamma", "family"});
  if (!s.contains("kind") || !s.at("kind").is_string()) {
    throw ConfigError(where + ".kind must be a string");
  }
  ScheduleSpec spec;
  spec.kind = ParseScheduleKind(s.at("kind").get<std::string>());
  spec.epsilon = NumberOr(s, "epsilon", spec.epsilon, where);
  spec.scale_hat = NumberOr(s, "scale_hat", spec.scale_hat, where);
  spec.scale = NumberOr(s, "scale", spec.scale, where);
  if (s.contains("derived_from_theorem")) {
    if (!s.at("derived_from_theorem").is_boolean()) {
      throw ConfigError(where + ".derived_from_theorem must be a boolean");
    }
    spec.derived_from_theorem = s.at("derived_from_theorem").get<bool>();
  }
  spec.gamma_hat = NumberOr(s, "gamma_hat", 0.0, where);
  spec.gamma = NumberOr(s, "gamma", 0.0, where);
  spec.hat_over_gamma = OptionalNumber(s, "hat_over_gamma", where);
  if (s.contains("family")) {
    if (!s.at("family").is_string()) {
      throw ConfigError(where + ".family must be a string");
    }
    spec.family = ParseRateFamily(s.at("family").get<std::string>());
  }
  spec.Validate();
  return spec;
}

OpponentSpec ParseOpponent(const json& o, const std::string& where) {
  CheckKeys(o, where, {"player", "kind", "amplitude"});
  OpponentSpec spec;
  const double player = GetNumber(o, "player", where);
  if (player < 0 || player != std::floor(player)) {
    throw ConfigError(where + ".player must be a non-negative integer");
  }
  spec.player = static_cast<std::size_t>(player);
  if (!o.contains("kind") || !o.at("kind").is_string()) {
    throw ConfigError(where + ".kind must be a string");
  }
  const std::string kind = o.at("kind").get<std::string>();
  if (kind == "oscillator") {
    spec.kind = OpponentKind::kOscillator;
  } else if (kind == "best_response") {
    spec.kind = OpponentKind::kBestResponse;
  } else {
    throw ConfigError("unknown opponent kind '" + kind + "'");
  }
  spec.amplitude = NumberOr(o, "amplitude", 1.0, where);
  return spec;
}

RunCheck ParseRunCheck(const std::string& name) {
  for (RunCheck c : {RunCheck::kEnergyIdentity, RunCheck::kDualAveraging,
                     RunCheck::kNonIncreasingRates}) {
    if (RunCheckName(c) == name) return c;
  }
  throw ConfigError("unknown check '" + name + "'");
}

struct Probe {
  std::vector<PlayerVector> per_player;
};

}  // namespace

std::string RunCheckName(RunCheck check) {
  switch (check) {
    case RunCheck::kEnergyIdentity:
      return "energy_identity";
    case RunCheck::kDualAveraging:
      return "dual_averaging";
    case RunCheck::kNonIncreasingRates:
      return "non_increasing_rates";
  }
  return "unknown";
}

void ExperimentConfig::Validate() const {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw ConfigError("seeds must be distinct");
  if (!(benchmark_radius >= 0.0) || !std::isfinite(benchmark_radius)) {
    throw ConfigError("benchmark_radius must be finite and >= 0");
  }
  noise.Validate();
  const std::size_t n = game.num_players();
  std::set<std::size_t> opponent_slots;
  for (const auto& o : opponents) {
    if (o.player >= n) {
      throw ConfigError("opponent player index " + std::to_string(o.player) +
                        " out of range");
    }
    if (!opponent_slots.insert(o.player).second) {
      throw ConfigError("two opponents control player " +
                        std::to_string(o.player));
    }
    if (!(o.amplitude >= 0.0) || !std::isfinite(o.amplitude)) {
      throw ConfigError("opponent amplitude must be finite and >= 0");
    }
  }
  if (players.size() + opponents.size() != n) {
    throw ConfigError("game has " + std::to_string(n) + " players but config "
                      "lists " + std::to_string(players.size()) +
                      " learners and " + std::to_string(opponents.size()) +
                      " opponents");
  }
  if (players.empty()) throw ConfigError("at least one learning player needed");
  std::size_t learner = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (opponent_slots.contains(i)) continue;
    const PlayerConfig& p = players[learner++];
    p.schedule.Validate();
    if (p.initial && p.initial->dim() != game.dims()[i]) {
      throw ConfigError("initial point of player " + std::to_string(i) +
                        " has dimension " + std::to_string(p.initial->dim()) +
                        ", game expects " + std::to_string(game.dims()[i]));
    }
  }
}

bool ExperimentConfig::Enabled(RunCheck check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

ExperimentConfig ParseConfig(const json& doc) {
  CheckKeys(doc, "config",
            {"game", "noise", "players", "opponents", "horizon", "seeds",
             "benchmark_radius", "output_dir", "checks"});
  for (const char* required : {"game", "players", "horizon", "seeds"}) {
    if (!doc.contains(required)) {
      throw ConfigError(std::string("config is missing '") + required + "'");
    }
  }
  try {
    ExperimentConfig config;
    config.game = ParseGame(doc.at("game"));
    if (doc.contains("noise")) config.noise = ParseNoise(doc.at("noise"));
    const json& players = doc.at("players");
    if (!players.is_array()) throw ConfigError("players must be an array");
    for (std::size_t i = 0; i < players.size(); ++i) {
      const std::string where = "players[" + std::to_string(i) + "]";
      const json& p = players[i];
      CheckKeys(p, where, {"algorithm", "schedule", "initial"});
      if (!p.contains("algorithm") || !p.at("algorithm").is_string() ||
          !p.contains("schedule")) {
        throw ConfigError(where + " needs algorithm and schedule");
      }
      PlayerConfig pc;
      pc.algorithm = ParseLearnerKind(p.at("algorithm").get<std::string>());
      pc.schedule = ParseSchedule(p.at("schedule"), where + ".schedule");
      if (p.contains("initial")) {
        pc.initial = PlayerVector(GetVector(p.at("initial"), where + ".initial"));
      }
      config.players.push_back(std::move(pc));
    }
    if (doc.contains("opponents")) {
      const json& opp = doc.at("opponents");
      if (!opp.is_array()) throw ConfigError("opponents must be an array");
      for (std::size_t i = 0; i < opp.size(); ++i) {
        config.opponents.push_back(
            ParseOpponent(opp[i], "opponents[" + std::to_string(i) + "]"));
      }
    }
    const json& horizon = doc.at("horizon");
    if (!horizon.is_number_integer()) {
      throw ConfigError("horizon must be an integer");
    }
    config.horizon = horizon.get<std::int64_t>();
    const json& seeds = doc.at("seeds");
    if (!seeds.is_array()) throw ConfigError("seeds must be an array");
    config.seeds.clear();
    for (const auto& s : seeds) {
      if (!s.is_number_integer() ||
          (!s.is_number_unsigned() && s.get<std::int64_t>() < 0)) {
        throw ConfigError("seeds must be non-negative integers");
      }
      config.seeds.push_back(s.get<std::uint64_t>());
    }
    config.benchmark_radius =
        NumberOr(doc, "benchmark_radius", config.benchmark_radius, "config");
    if (doc.contains("output_dir")) {
      if (!doc.at("output_dir").is_string()) {
        throw ConfigError("output_dir must be a string");
      }
      config.output_dir = doc.at("output_dir").get<std::string>();
    }
    if (doc.contains("checks")) {
      const json& checks = doc.at("checks");
      if (!checks.is_array()) throw ConfigError("checks must be an array");
      for (const auto& c : checks) {
        if (!c.is_string()) throw ConfigError("checks must be strings");
        config.checks.push_back(ParseRunCheck(c.get<std::string>()));
      }
    }
    config.Validate();
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const StructuralError& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return ParseConfig(doc);
}

PlayerVector AdversarialOpponentStep(const OpponentSpec& spec, const Game& game,
                                     std::int64_t t,
                                     const JointAction* last_played) {
  const std::size_t dim = game.dims().at(spec.player);
  PlayerVector out(dim);
  switch (spec.kind) {
    case OpponentKind::kOscillator: {
      const double value = (t % 2 == 1) ? spec.amplitude : -spec.amplitude;
      for (std::size_t j = 0; j < dim; ++j) out[j] = value;
      return out;
    }
    case OpponentKind::kBestResponse: {
      if (last_played == nullptr || spec.amplitude == 0.0) return out;
      // Minimizes the opponent's linearized loss <V_j, y> over the ball of
      // radius `amplitude` around the origin.
      const PlayerVector v = game.PayoffGradient(*last_played)[spec.player];
      const double norm = std::sqrt(v.NormSq());
      if (norm == 0.0) return out;
      out = v;
      out *= -spec.amplitude / norm;
      return out;
    }
  }
  return out;
}

MetricAccumulator Simulate(const ExperimentConfig& config, std::uint64_t seed,
                           const RoundObserver& observer) {
  config.Validate();
  const Game& game = config.game;
  const std::size_t n = game.num_players();
  const TheoremContext context{n, game.lipschitz(), config.noise.sigma_mult};

  std::vector<std::optional<Learner>> learners(n);
  std::vector<const OpponentSpec*> opponents(n, nullptr);
  std::vector<bool> is_learner(n, true);
  for (const auto& o : config.opponents) {
    opponents[o.player] = &o;
    is_learner[o.player] = false;
  }
  std::size_t next_config = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_learner[i]) continue;
    const PlayerConfig& pc = config.players[next_config++];
    PlayerVector x1 = pc.initial ? *pc.initial : PlayerVector(game.dims()[i], 1.0);
    learners[i].emplace(pc.algorithm, std::move(x1),
                        Schedule(pc.schedule, DefaultRateFamily(pc.algorithm),
                                 context),
                        i);
  }

  std::vector<std::vector<PlayerVector>> benchmarks;
  for (std::size_t i = 0; i < n; ++i) {
    benchmarks.push_back(DefaultBenchmarks(game, i, config.benchmark_radius));
  }
  MetricAccumulator metrics(benchmarks);

  const bool check_identity = config.Enabled(RunCheck::kEnergyIdentity);
  const bool check_dual = config.Enabled(RunCheck::kDualAveraging);
  const bool check_monotone = config.Enabled(RunCheck::kNonIncreasingRates);

  // Probes: the +R benchmark along the first axis, the equilibrium, and one
  // random point per run.
  std::vector<Probe> probes;
  if (check_identity) {
    RngStream probe_rng(seed, kProbeStreamId);
    Probe bench, eq, random;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& b = benchmarks[i];
      bench.per_player.push_back(b.size() > 1 ? b[1] : b[0]);
      eq.per_player.push_back(b[0]);
      PlayerVector r = b[0];
      const auto offset = UniformInBall(probe_rng, r.dim(),
                                        std::max(1.0, config.benchmark_radius));
      for (std::size_t j = 0; j < r.dim(); ++j) r[j] += offset[j];
      random.per_player.push_back(std::move(r));
    }
    probes = {std::move(bench), std::move(eq), std::move(random)};
  }

  std::vector<RngStream> streams;
  for (std::size_t i = 0; i < n; ++i) streams.emplace_back(seed, NoiseStreamId(i));
  std::vector<PlayerVector> dual_sums;
  for (std::size_t i = 0; i < n; ++i) dual_sums.emplace_back(game.dims()[i]);

  std::vector<RoundRates> rates(n);
  std::vector<RoundRates> prev_rates(n);
  std::optional<JointAction> last_played;

  for (std::int64_t t = 1; t <= config.horizon; ++t) {
    std::vector<PlayerVector> played(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_learner[i]) continue;
      rates[i] = learners[i]->BeginRound();
      if (rates[i].hat_state_round != std::max<std::int64_t>(t - 2, 0)) {
        throw ContractViolation(
            "round " + std::to_string(t) + ", player " + std::to_string(i) +
            ": extrapolation rate computed after round t-1 feedback");
      }
      if (check_monotone && t > 1 &&
          (rates[i].gamma_hat > prev_rates[i].gamma_hat ||
           rates[i].gamma_next > prev_rates[i].gamma_next)) {
        throw RunError("round " + std::to_string(t) + ", player " +
                       std::to_string(i) + ": learning rate increased");
      }
      played[i] = learners[i]->Extrapolate(rates[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (is_learner[i]) continue;
      played[i] = AdversarialOpponentStep(
          *opponents[i], game, t, last_played ? &*last_played : nullptr);
    }
    JointAction x(std::move(played));
    const JointAction v = game.PayoffGradient(x);
    metrics.Observe(game, x, v);

    double round_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_learner[i]) continue;
      try {
        const FeedbackSample g =
            SampleFeedback(v[i], config.noise, streams[i], i, t);
        const RoundTrace trace = learners[i]->Update(g, rates[i]);
        if (check_identity) {
          for (const Probe& p : probes) {
            const auto residual = EnergyIdentityResidual(trace, p.per_player[i]);
            if (!residual) continue;
            round_residual = std::max(round_residual, *residual);
            if (!(*residual <= kIdentityTolerance)) {
              throw RunError("energy identity residual " +
                             FormatDecimal(*residual) + " exceeds 1e-9");
            }
          }
        }
        if (check_dual && learners[i]->kind() == LearnerKind::kOptDaPlus) {
          dual_sums[i] += g.g;
          PlayerVector rebuilt = learners[i]->x_init();
          rebuilt.AddScaled(-rates[i].gamma_next, dual_sums[i]);
          const double gap = std::sqrt((rebuilt - learners[i]->x()).NormSq());
          const double scale = 1.0 + std::sqrt(rebuilt.NormSq());
          if (!(gap <= kReconstructionTolerance * scale)) {
            throw RunError("dual averaging reconstruction gap " +
                           FormatDecimal(gap));
          }
        }
      } catch (const RunError& e) {
        const std::string what = e.what();
        if (what.find("round ") != std::string::npos) throw;
        throw RunError("round " + std::to_string(t) + ", player " +
                       std::to_string(i) + ": " + what);
      }
    }
    metrics.ObserveResidual(round_residual);
    prev_rates = rates;
    last_played = x;

    if (observer) {
      RoundView view;
      view.t = t;
      view.played = &x;
      view.gradient = &v;
      view.metrics = &metrics;
      view.rates = &rates;
      view.is_learner = &is_learner;
      view.round_residual = round_residual;
      observer(view);
    }
  }
  return metrics;
}

namespace {

RunRecord MakeRecord(const RoundView& view, std::size_t player,
                     std::size_t run_id, std::uint64_t seed) {
  RunRecord r;
  r.run = run_id;
  r.seed = seed;
  r.t = view.t;
  r.player = player;
  r.x = (*view.played)[player];
  r.regret_lin = view.metrics->MaxRegret(player);
  r.dist_eq = view.metrics->last_distance();
  r.grad_energy_cum = view.metrics->grad_energy_cum();
  if ((*view.is_learner)[player]) {
    r.gamma_hat = (*view.rates)[player].gamma_hat;
    r.gamma = (*view.rates)[player].gamma_next;
  }
  return r;
}

}  // namespace

std::vector<RunRecord> RunOne(const ExperimentConfig& config,
                              std::uint64_t seed, std::size_t run_id) {
  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(config.horizon) *
                  config.game.num_players());
  Simulate(config, seed, [&](const RoundView& view) {
    for (std::size_t i = 0; i < view.played->num_players(); ++i) {
      records.push_back(MakeRecord(view, i, run_id, seed));
    }
  });
  return records;
}

std::string FormatDecimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void WriteCsvRow(std::ostream& out, const RunRecord& r) {
  std::string x;
  for (std::size_t j = 0; j < r.x.dim(); ++j) {
    if (j > 0) x += ';';
    x += FormatDecimal(r.x[j]);
  }
  out << r.run << ',' << r.seed << ',' << r.t << ',' << r.player << ',' << x
      << ',' << FormatDecimal(r.regret_lin) << ',' << FormatDecimal(r.dist_eq)
      << ',' << FormatDecimal(r.grad_energy_cum) << ','
      << FormatDecimal(r.gamma_hat) << ',' << FormatDecimal(r.gamma) << '\n';
}

void WriteRunCsv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kRunCsvHeader << '\n';
  for (const auto& r : records) WriteCsvRow(out, r);
}

namespace {

std::ofstream OpenOutput(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RunError("cannot open output file '" + path + "'");
  return out;
}

}  // namespace

void RunToCsv(const ExperimentConfig& config, std::uint64_t seed,
              std::size_t run_id, const std::string& path) {
  std::ofstream out = OpenOutput(path);
  out << kRunCsvHeader << '\n';
  Simulate(config, seed, [&](const RoundView& view) {
    for (std::size_t i = 0; i < view.played->num_players(); ++i) {
      WriteCsvRow(out, MakeRecord(view, i, run_id, seed));
    }
  });
  out.flush();
  if (!out) throw RunError("failed writing '" + path + "'");
}

std::size_t ThreadBudget() {
  if (const char* env = std::getenv("GAMELAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void ParallelFor(std::size_t count,
                 const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min(count, ThreadBudget());
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

SuiteReport RunSuite(const ExperimentConfig& config, bool write_files) {
  config.Validate();
  const std::size_t n = config.game.num_players();
  const auto horizon = static_cast<std::size_t>(config.horizon);
  const std::size_t runs = config.seeds.size();

  // Per run: [t][player][regret, dist, energy].
  std::vector<std::vector<double>> series(runs);
  SuiteReport report;
  report.outcomes.resize(runs);

  ParallelFor(runs, [&](std::size_t r) {
    const std::uint64_t seed = config.seeds[r];
    SeedOutcome& outcome = report.outcomes[r];
    outcome.seed = seed;
    std::vector<double> values;
    values.reserve(horizon * n * 3);
    try {
      std::ofstream out;
      if (write_files) {
        outcome.csv_path = (std::filesystem::path(config.output_dir) /
                            ("run_seed" + std::to_string(seed) + ".csv"))
                               .string();
        out = OpenOutput(outcome.csv_path);
        out << kRunCsvHeader << '\n';
      }
      Simulate(config, seed, [&](const RoundView& view) {
        for (std::size_t i = 0; i < n; ++i) {
          const RunRecord rec = MakeRecord(view, i, r, seed);
          values.push_back(rec.regret_lin);
          values.push_back(rec.dist_eq);
          values.push_back(rec.grad_energy_cum);
          if (write_files) WriteCsvRow(out, rec);
        }
      });
      if (write_files) {
        out.flush();
        if (!out) throw RunError("failed writing '" + outcome.csv_path + "'");
      }
      series[r] = std::move(values);
      outcome.ok = true;
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.error = e.what();
    }
  });

  std::vector<std::size_t> order;
  for (std::size_t r = 0; r < runs; ++r) {
    if (report.outcomes[r].ok) {
      order.push_back(r);
    } else {
      ++report.failures;
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return config.seeds[a] < config.seeds[b];
  });

  if (!order.empty()) {
    report.aggregate.reserve(horizon * n);
    const double k = static_cast<double>(order.size());
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t base = (t * n + i) * 3;
        double sum[3] = {0, 0, 0};
        for (std::size_t r : order) {
          for (int m = 0; m < 3; ++m) sum[m] += series[r][base + m];
        }
        double mean[3], var[3] = {0, 0, 0};
        for (int m = 0; m < 3; ++m) mean[m] = sum[m] / k;
        for (std::size_t r : order) {
          for (int m = 0; m < 3; ++m) {
            const double d = series[r][base + m] - mean[m];
            var[m] += d * d;
          }
        }
        AggregateRow row;
        row.t = static_cast<std::int64_t>(t + 1);
        row.player = i;
        row.runs = order.size();
        const double denom = order.size() > 1 ? k - 1.0 : 1.0;
        row.regret_lin_mean = mean[0];
        row.regret_lin_std = std::sqrt(var[0] / denom);
        row.dist_eq_mean = mean[1];
        row.dist_eq_std = std::sqrt(var[1] / denom);
        row.grad_energy_cum_mean = mean[2];
        row.grad_energy_cum_std = std::sqrt(var[2] / denom);
        report.aggregate.push_back(row);
      }
    }
  }

  if (write_files && !order.empty()) {
    report.aggregate_path =
        (std::filesystem::path(config.output_dir) / "aggregate.csv").string();
    std::ofstream out = OpenOutput(report.aggregate_path);
    WriteAggregateCsv(out, report.aggregate);
    out.flush();
    if (!out) throw RunError("failed writing '" + report.aggregate_path + "'");
  }
  return report;
}

void WriteAggregateCsv(std::ostream& out,
                       const std::vector<AggregateRow>& rows) {
  out << kAggregateCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.t << ',' << r.player << ',' << r.runs << ','
        << FormatDecimal(r.regret_lin_mean) << ','
        << FormatDecimal(r.regret_lin_std) << ','
        << FormatDecimal(r.dist_eq_mean) << ',' << FormatDecimal(r.dist_eq_std)
        << ',' << FormatDecimal(r.grad_energy_cum_mean) << ','
        << FormatDecimal(r.grad_energy_cum_std) << '\n';
  }
}

}  // namespace gamelab
