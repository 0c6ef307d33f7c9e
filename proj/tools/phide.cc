// Copyright 2026 The Progressive Hiding Authors
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

// Command-line front end: run, summarize, verify and value.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phide/errors.h"
#include "phide/evaluation.h"
#include "phide/experiment.h"
#include "phide/verification.h"
#include "phide/zoo.h"

namespace {

constexpr const char* kConfigKeys[] = {
    "game",        "algorithm",  "map",         "relaxed_map", "schedule",
    "lambda",      "target",     "iterations",  "episodes",    "learner",
    "learning_rate", "mode",     "exploration", "prox_mode",   "randomize_init",
    "repeats",     "seed",       "threshold",   "quantiles",   "threads"};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw phide::ConfigError("runs: cannot open '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<double> ParseLevels(const std::string& text) {
  std::map<std::string, std::string> values{{"quantiles", text}};
  return phide::ParseConfig(values).quantiles;
}

void PrintSummary(const phide::Summary& summary) {
  std::printf("final_mean=%.6f success_rate=%.4f threshold=%g runs_t=%zu\n",
              summary.final_mean, summary.success_rate, summary.threshold,
              summary.rows.size());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Progressive hiding experiments"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "Run seeded repeats of an algorithm");
  std::string config_path;
  std::string out_dir;
  std::map<std::string, std::string> flags;
  run->add_option("--config", config_path, "File of 'key = value' lines");
  run->add_option("--out", out_dir, "Directory for runs.csv and summary.csv");
  for (const char* key : kConfigKeys) {
    run->add_option(std::string("--") + key, flags[key]);
  }

  CLI::App* summarize =
      app.add_subcommand("summarize", "Summarize an existing runs.csv");
  std::string runs_path;
  std::string levels = "0.1,0.9";
  double threshold = 0.95;
  std::string summary_out;
  summarize->add_option("--runs", runs_path, "runs.csv to read")->required();
  summarize->add_option("--quantiles", levels, "Comma-separated levels");
  summarize->add_option("--threshold", threshold, "Success threshold");
  summarize->add_option("--out", summary_out, "Write summary.csv here");

  CLI::App* verify =
      app.add_subcommand("verify", "Run the property and bound suite");
  std::vector<int> criteria;
  verify->add_option("--criteria", criteria, "Subset of criteria to run")
      ->delimiter(',');
  std::string fixture = PHIDE_FIXTURE_DIR "/trade_comm_3_2_value.txt";
  verify->add_option("--fixture", fixture, "Recorded Trade Comm (3,2) value");

  CLI::App* value = app.add_subcommand(
      "value", "Optimal value of a player against a uniform profile");
  std::string game = "trade_comm:n=2,m=2";
  std::string map = "original";
  int player = 0;
  value->add_option("--game", game, "Game selector");
  value->add_option("--map", map, "Information map");
  value->add_option("--player", player, "Player");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      std::map<std::string, std::string> values;
      if (!config_path.empty()) values = phide::ReadConfigFile(config_path);
      for (const auto& [key, text] : flags) {
        if (run->count(std::string("--") + key) > 0) values[key] = text;
      }
      phide::ExperimentConfig config = phide::ParseConfig(values);
      phide::ApplySeedOverride(config);
      phide::ValidateConfig(config);
      const auto records = phide::RunExperiment(config);
      const phide::Summary summary =
          phide::Summarize(records, config.quantiles, config.threshold);
      if (!out_dir.empty()) phide::WriteOutputs(out_dir, records, summary);
      PrintSummary(summary);
    } else if (summarize->parsed()) {
      const auto records = phide::ParseRunsCsv(ReadFile(runs_path));
      const phide::Summary summary =
          phide::Summarize(records, ParseLevels(levels), threshold);
      if (summary_out.empty()) {
        std::cout << phide::SummaryCsv(summary);
      } else {
        phide::WriteOutputs(summary_out, records, summary);
      }
      PrintSummary(summary);
    } else if (verify->parsed()) {
      bool all = true;
      for (const phide::CriterionResult& r :
           phide::RunCriteria(criteria, fixture, [](const phide::CriterionResult& r) {
             std::cout << phide::FormatCriterion(r) << std::endl;
           })) {
        all = all && r.passed;
      }
      return all ? 0 : 1;
    } else if (value->parsed()) {
      const phide::GameWithMaps bundle = phide::BuildGame(game);
      if (!bundle.has_map(map)) {
        throw phide::ConfigError("map: game has no map '" + map + "'");
      }
      phide::InfoIndex index(bundle.game, bundle.map(map));
      const double v = phide::BestResponseValue(
          index, player, phide::BehavioralPolicy::Uniform(index));
      std::printf("%.17g\n", v);
    }
  } catch (const phide::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
