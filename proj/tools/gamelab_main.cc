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

// Command-line driver.
//
//   gamelab run <config>                  one seed, CSV to --output or stdout
//   gamelab suite <config>                all seeds, per-run and aggregate CSV
//   gamelab check <config> <criterion>    one acceptance criterion
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "gamelab/checks.h"
#include "gamelab/errors.h"
#include "gamelab/harness.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string config_path;
  std::string criterion;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::int64_t> horizon_override;
  std::string output;
};

gamelab::ExperimentConfig Load(const Flags& f) {
  gamelab::ExperimentConfig config = gamelab::LoadConfig(f.config_path);
  if (f.seed_override) config.seeds = {*f.seed_override};
  if (f.horizon_override) config.horizon = *f.horizon_override;
  config.Validate();
  return config;
}

int Run(const Flags& f) {
  const gamelab::ExperimentConfig config = Load(f);
  const std::uint64_t seed = config.seeds.front();
  if (f.output.empty()) {
    gamelab::WriteRunCsv(std::cout, gamelab::RunOne(config, seed));
  } else {
    gamelab::RunToCsv(config, seed, 0, f.output);
  }
  return kExitOk;
}

int Suite(const Flags& f) {
  gamelab::ExperimentConfig config = Load(f);
  if (!f.output.empty()) config.output_dir = f.output;
  const gamelab::SuiteReport report = gamelab::RunSuite(config);
  for (const auto& o : report.outcomes) {
    if (o.ok) {
      std::cout << "seed " << o.seed << ": " << o.csv_path << "\n";
    } else {
      std::cerr << "seed " << o.seed << " failed: " << o.error << "\n";
    }
  }
  std::cout << "aggregate over " << report.outcomes.size() - report.failures
            << " runs (" << report.failures << " failed)";
  if (!report.aggregate_path.empty()) std::cout << ": " << report.aggregate_path;
  std::cout << "\n";
  return report.failures == 0 ? kExitOk : kExitRuntime;
}

int Check(const Flags& f) {
  if (!gamelab::IsCriterion(f.criterion)) {
    throw gamelab::ConfigError("unknown criterion '" + f.criterion + "'");
  }
  const gamelab::ExperimentConfig config = Load(f);
  gamelab::CheckOptions options;
  options.seeds = config.seeds;
  options.horizon = f.horizon_override;
  const gamelab::CheckResult r = gamelab::RunCriterion(f.criterion, options);
  std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << ": " << r.summary
            << "\n";
  for (const auto& [name, value] : r.stats) {
    std::cout << "  " << name << " = " << gamelab::FormatDecimal(value) << "\n";
  }
  if (!f.output.empty()) {
    std::ofstream out(f.output, std::ios::binary | std::ios::trunc);
    if (!out) throw gamelab::RunError("cannot open '" + f.output + "'");
    out << "statistic,value\n";
    for (const auto& [name, value] : r.stats) {
      out << name << ',' << gamelab::FormatDecimal(value) << '\n';
    }
  }
  return r.passed ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy-feedback learning in games"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", flags.config_path, "JSON config file")->required();
    sub->add_option("--seed-override", flags.seed_override,
                    "Replace the config's seeds with this single seed");
    sub->add_option("--horizon-override", flags.horizon_override,
                    "Replace the horizon");
  };
  CLI::App* run = app.add_subcommand("run", "Run the first seed");
  add_common(run);
  run->add_option("--output", flags.output, "CSV path (default: stdout)");
  CLI::App* suite = app.add_subcommand("suite", "Run every seed");
  add_common(suite);
  suite->add_option("--output", flags.output,
                    "Output directory (default: config output_dir)");
  CLI::App* check = app.add_subcommand("check", "Run one acceptance criterion");
  add_common(check);
  check->add_option("criterion", flags.criterion, "Criterion id")->required();
  check->add_option("--output", flags.output, "Write statistics CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run) return Run(flags);
    if (*suite) return Suite(flags);
    return Check(flags);
  } catch (const gamelab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gamelab::StructuralError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
