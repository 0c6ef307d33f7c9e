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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "phide/errors.h"
#include "phide/experiment.h"

namespace phide {
namespace {

std::string ErrorOf(const std::map<std::string, std::string>& values) {
  try {
    ValidateConfig(ParseConfig(values));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool StartsWith(const std::string& text, const std::string& prefix) {
  return text.rfind(prefix, 0) == 0;
}

RunRecord Constant(int run, int length, double value) {
  RunRecord r;
  r.run = run;
  for (int t = 1; t <= length; ++t) {
    IterationRecord row;
    row.t = t;
    row.expected_payoff = value;
    r.trace.push_back(row);
  }
  r.final_payoff = value;
  return r;
}

// Drops the last CSV column of every line.
std::string WithoutLastColumn(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

TEST_CASE("nearest-rank quantiles") {
  const std::vector<double> values{7, 3, 9, 1, 5, 2, 10, 4, 8, 6};
  CHECK(NearestRankQuantile(values, 0.) == 1.);
  CHECK(NearestRankQuantile(values, 0.1) == 1.);
  CHECK(NearestRankQuantile(values, 0.15) == 2.);
  CHECK(NearestRankQuantile(values, 0.5) == 5.);
  CHECK(NearestRankQuantile(values, 0.9) == 9.);
  CHECK(NearestRankQuantile(values, 1.) == 10.);
  CHECK(NearestRankQuantile({4.}, 0.3) == 4.);
  double previous = -1.;
  for (double q = 0.; q <= 1.; q += 0.01) {
    const double v = NearestRankQuantile(values, q);
    CHECK(v >= previous);
    previous = v;
  }
  CHECK_THROWS_AS(NearestRankQuantile({}, 0.5), InvalidArgument);
}

TEST_CASE("summaries") {
  const Summary single = Summarize({Constant(0, 5, 0.3)}, {0.1, 0.9}, 0.95);
  REQUIRE(single.rows.size() == 5);
  for (const SummaryRow& row : single.rows) {
    CHECK(row.mean == 0.3);
    CHECK(row.quantiles == std::vector<double>{0.3, 0.3});
  }
  std::vector<RunRecord> ones;
  for (int k = 0; k < 7; ++k) ones.push_back(Constant(k, 3, 1.));
  const Summary flat = Summarize(ones, {0., 0.5, 1.}, 0.95);
  for (const SummaryRow& row : flat.rows) {
    CHECK(row.mean == 1.);
    CHECK(row.quantiles == std::vector<double>{1., 1., 1.});
  }
  CHECK(flat.success_rate == 1.);

  std::vector<RunRecord> mixed;
  for (int k = 0; k < 100; ++k) mixed.push_back(Constant(k, 2, k < 48 ? 0.99 : 0.5));
  const Summary counted = Summarize(mixed, {0.1, 0.9}, 0.95);
  CHECK(counted.success_rate == doctest::Approx(0.48));
  CHECK(counted.final_mean == doctest::Approx(0.48 * 0.99 + 0.52 * 0.5));
  CHECK(counted.rows[0].quantiles[0] <= counted.rows[0].quantiles[1]);

  CHECK_THROWS_AS(Summarize({}, {0.5}, 0.95), InvalidArgument);
  CHECK_THROWS_AS(Summarize({Constant(0, 2, 1.), Constant(1, 3, 1.)}, {0.5}, 0.95),
                  InvalidArgument);
}

TEST_CASE("configuration parsing") {
  const ExperimentConfig config = ParseConfig(
      {{"game", "trade_comm:n=2,m=2"}, {"algorithm", "cfr"},
       {"episodes", "17"}, {"learner", "ftrl_entropic"}, {"lambda", "0.5"},
       {"schedule", "ramp"}, {"randomize_init", "true"}, {"repeats", "3"},
       {"seed", "12345678901234"}, {"quantiles", "0.25,0.75"}, {"mode", "mc"},
       {"prox_mode", "coordinate_ascent"}, {"threads", "2"}});
  CHECK(config.algorithm == Algorithm::kCfr);
  CHECK(config.iterations == 17);
  CHECK(config.learner == LearnerKind::kFtrlEntropic);
  CHECK(config.lambda == 0.5);
  CHECK(config.schedule == ScheduleKind::kLinearRamp);
  CHECK(config.randomize_init);
  CHECK(config.repeats == 3);
  CHECK(config.seed == 12345678901234ull);
  CHECK(config.quantiles == std::vector<double>{0.25, 0.75});
  CHECK(config.mode == SamplingMode::kMonteCarlo);
  CHECK(config.prox_mode == ProxMode::kCoordinateAscent);
  CHECK(config.threads == 2);
  CHECK_NOTHROW(ValidateConfig(config));

  CHECK(StartsWith(ErrorOf({{"lambda", "abc"}}), "lambda:"));
  CHECK(StartsWith(ErrorOf({{"lambda", "-1"}}), "lambda:"));
  CHECK(StartsWith(ErrorOf({{"iterations", "1.5"}}), "iterations:"));
  CHECK(StartsWith(ErrorOf({{"repeats", "0"}}), "repeats:"));
  CHECK(StartsWith(ErrorOf({{"learner", "adam"}}), "learner:"));
  CHECK(StartsWith(ErrorOf({{"algorithm", "mcts"}}), "algorithm:"));
  CHECK(StartsWith(ErrorOf({{"schedule", "cosine"}}), "schedule:"));
  CHECK(StartsWith(ErrorOf({{"mode", "full"}}), "mode:"));
  CHECK(StartsWith(ErrorOf({{"randomize_init", "maybe"}}), "randomize_init:"));
  CHECK(StartsWith(ErrorOf({{"game", "chess"}}), "game:"));
  CHECK(StartsWith(ErrorOf({{"map", "cheat"}}), "map:"));
  CHECK(StartsWith(ErrorOf({{"quantiles", "0.5,2"}}), "quantiles:"));
  CHECK(StartsWith(ErrorOf({{"exploration", "0"}}), "exploration:"));
  CHECK(StartsWith(ErrorOf({{"colour", "red"}}), "colour:"));
}

TEST_CASE("relaxed map requirements by algorithm") {
  CHECK(ErrorOf({{"game", "trade_comm"}, {"algorithm", "ph"},
                 {"relaxed_map", "cheat"}}) == "");
  CHECK(StartsWith(ErrorOf({{"game", "trade_comm"}, {"algorithm", "rir"},
                            {"relaxed_map", "cheat"}}),
                   "relaxed_map:"));
  CHECK(ErrorOf({{"game", "trade_comm"}, {"algorithm", "rir"},
                 {"relaxed_map", "perfect_recall"}}) == "");
  CHECK(StartsWith(ErrorOf({{"game", "trade_comm"}, {"algorithm", "rir"},
                            {"relaxed_map", "perfect_recall"},
                            {"lambda", "0"}}),
                   "lambda:"));
}

TEST_CASE("config files and seed override") {
  const auto path =
      std::filesystem::temp_directory_path() / "phide_experiment_test.cfg";
  {
    std::ofstream out(path);
    out << "# comment\n game = matching_pennies \nlambda=0.25 # trailing\n\n";
  }
  const auto values = ReadConfigFile(path.string());
  CHECK(values.at("game") == "matching_pennies");
  CHECK(values.at("lambda") == "0.25");
  {
    std::ofstream out(path);
    out << "no equals sign\n";
  }
  CHECK_THROWS_AS(ReadConfigFile(path.string()), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(ReadConfigFile(path.string()), ConfigError);

  ExperimentConfig config;
  config.seed = 5;
  unsetenv("PHIDE_SEED");
  ApplySeedOverride(config);
  CHECK(config.seed == 5);
  setenv("PHIDE_SEED", "77", 1);
  ApplySeedOverride(config);
  CHECK(config.seed == 77);
  setenv("PHIDE_SEED", "x", 1);
  CHECK_THROWS_AS(ApplySeedOverride(config), ConfigError);
  unsetenv("PHIDE_SEED");
}

TEST_CASE("derived seeds") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0ull, 1ull, 2ull}) {
    for (int run = 0; run < 100; ++run) seen.insert(DeriveSeed(master, run));
  }
  CHECK(seen.size() == 300);
  CHECK(DeriveSeed(3, 4) == DeriveSeed(3, 4));
}

TEST_CASE("experiments are reproducible") {
  ExperimentConfig config;
  config.game = "matching_pennies";
  config.algorithm = Algorithm::kProgressiveHiding;
  config.relaxed_map = "relaxed";
  config.mode = SamplingMode::kMonteCarlo;
  config.randomize_init = true;
  config.iterations = 30;
  config.repeats = 6;
  config.seed = 11;
  config.threads = 1;
  const std::string serial = RunsCsv(RunExperiment(config));
  config.threads = 4;
  const auto records = RunExperiment(config);
  CHECK(RunsCsv(records) == serial);
  REQUIRE(records.size() == 6);
  for (const RunRecord& r : records) {
    CHECK(r.trace.size() == 30);
    CHECK(r.seed == DeriveSeed(11, r.run));
    CHECK(r.final_payoff == r.trace.back().expected_payoff);
    for (const IterationRecord& row : r.trace) {
      CHECK(row.expected_payoff >= 0.);
      CHECK(row.expected_payoff <= 1.);
    }
  }
  config.seed = 12;
  CHECK(RunsCsv(RunExperiment(config)) != serial);

  const std::vector<RunRecord> parsed = ParseRunsCsv(serial);
  CHECK(RunsCsv(parsed) == serial);
  CHECK(StartsWith(serial,
                   "run,seed,t,expected_payoff_projected,penalty_mass,"
                   "sum_pos_local_regret,lambda_t\n"));
  const Summary summary = Summarize(parsed, {0.1, 0.9}, 0.95);
  CHECK(StartsWith(SummaryCsv(summary), "t,mean,q0.1,q0.9\n"));
}

TEST_CASE("progressive hiding without relaxation matches CFR end to end") {
  for (const std::string game : {"matching_pennies", "trade_comm:n=2,m=2"}) {
    for (const std::string learner : {"regret_matching", "ftrl_entropic"}) {
      std::map<std::string, std::string> values{
          {"game", game},        {"learner", learner},
          {"iterations", "25"},  {"repeats", "2"},
          {"seed", "4"},         {"randomize_init", "true"},
          {"map", "original"},   {"relaxed_map", "original"}};
      values["algorithm"] = "cfr";
      const std::string cfr = RunsCsv(RunExperiment(ParseConfig(values)));
      values["algorithm"] = "ph";
      const std::string ph = RunsCsv(RunExperiment(ParseConfig(values)));
      CHECK(WithoutLastColumn(cfr) == WithoutLastColumn(ph));
    }
  }
}

TEST_CASE("relaxation runs and output files") {
  ExperimentConfig config;
  config.game = "trade_comm";
  config.algorithm = Algorithm::kRelaxation;
  config.relaxed_map = "perfect_recall";
  config.lambda = 0.5;
  config.iterations = 5;
  config.repeats = 2;
  config.randomize_init = true;
  const auto records = RunExperiment(config);
  for (const RunRecord& r : records) {
    REQUIRE(r.trace.size() == 5);
    for (const IterationRecord& row : r.trace) {
      CHECK(row.lambda == 0.5);
      CHECK(row.expected_payoff >= 0.);
      CHECK(row.expected_payoff <= 1.);
      CHECK(row.penalty_mass >= 0.);
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "phide_outputs";
  std::filesystem::remove_all(dir);
  WriteOutputs(dir.string(), records, Summarize(records, {0.1, 0.9}, 0.95));
  std::ifstream runs(dir / "runs.csv");
  std::stringstream text;
  text << runs.rdbuf();
  CHECK(text.str() == RunsCsv(records));
  CHECK(std::filesystem::exists(dir / "summary.csv"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace phide
