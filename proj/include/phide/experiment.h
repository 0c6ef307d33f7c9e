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

#ifndef PHIDE_EXPERIMENT_H_
#define PHIDE_EXPERIMENT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phide/learner_table.h"
#include "phide/progressive_hiding.h"
#include "phide/regret.h"
#include "phide/relaxation.h"

namespace phide {

enum class Algorithm { kCfr, kProgressiveHiding, kRelaxation };
Algorithm ParseAlgorithm(const std::string& name);  // "cfr" | "ph" | "rir"
std::string AlgorithmName(Algorithm algorithm);

struct ExperimentConfig {
  std::string game = "matching_pennies";
  Algorithm algorithm = Algorithm::kProgressiveHiding;
  // Map the output must be implementable for.
  std::string map = "original";
  // Map the learners (ph) or the proximal step (rir) play on.
  std::string relaxed_map = "original";
  ScheduleKind schedule = ScheduleKind::kConstant;
  double lambda = 0.05;
  double target = 0.9;  // payoff controller
  int iterations = 200;
  LearnerKind learner = LearnerKind::kRegretMatching;
  double learning_rate = 0.;  // <= 0: default
  SamplingMode mode = SamplingMode::kExact;
  double exploration = 0.6;
  ProxMode prox_mode = ProxMode::kBackwardInduction;
  bool randomize_init = false;
  int repeats = 1;
  std::uint64_t seed = 0;
  double threshold = 0.95;
  std::vector<double> quantiles = {0.1, 0.9};
  int threads = 0;  // 0: hardware concurrency
};

// Builds a config from key/value pairs. Keys: game, algorithm, map,
// relaxed_map, schedule, lambda, target, iterations (alias episodes), learner,
// learning_rate, mode, exploration, prox_mode, randomize_init, repeats, seed,
// threshold, quantiles (comma separated), threads. Throws ConfigError naming
// the offending key.
ExperimentConfig ParseConfig(const std::map<std::string, std::string>& values);
// Reads "key = value" lines ('#' starts a comment).
std::map<std::string, std::string> ReadConfigFile(const std::string& path);
// Throws ConfigError naming the offending key.
void ValidateConfig(const ExperimentConfig& config);
// Replaces config.seed with PHIDE_SEED when that variable is set.
void ApplySeedOverride(ExperimentConfig& config);

// Seed of run `run` under master seed `master` (SplitMix64 of the pair).
std::uint64_t DeriveSeed(std::uint64_t master, int run);

struct RunRecord {
  int run = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> trace;
  double final_payoff = 0.;
};

struct SummaryRow {
  int t = 0;
  double mean = 0.;
  std::vector<double> quantiles;
};

struct Summary {
  std::vector<double> quantile_levels;
  std::vector<SummaryRow> rows;
  double threshold = 0.;
  // Fraction of runs whose final payoff exceeds the threshold.
  double success_rate = 0.;
  double final_mean = 0.;
};

// Runs config.repeats independent runs; deterministic given the master seed.
std::vector<RunRecord> RunExperiment(const ExperimentConfig& config);
// One run with an explicit seed.
RunRecord RunOnce(const ExperimentConfig& config, int run, std::uint64_t seed);

// Per-iteration mean and nearest-rank quantiles; throws InvalidArgument on an
// empty or ragged record set.
Summary Summarize(const std::vector<RunRecord>& records,
                  const std::vector<double>& quantiles, double threshold);
// Nearest-rank quantile of unsorted values: the ceil(q N)-th smallest.
double NearestRankQuantile(std::vector<double> values, double q);

// CSV payloads. runs.csv: run,seed,t,expected_payoff_projected,penalty_mass,
// sum_pos_local_regret,lambda_t. summary.csv: t,mean,q<level>...
std::string RunsCsv(const std::vector<RunRecord>& records);
std::string SummaryCsv(const Summary& summary);
std::vector<RunRecord> ParseRunsCsv(const std::string& text);

// Writes runs.csv and summary.csv into `directory` (created if missing).
void WriteOutputs(const std::string& directory,
                  const std::vector<RunRecord>& records,
                  const Summary& summary);

}  // namespace phide

#endif  // PHIDE_EXPERIMENT_H_
