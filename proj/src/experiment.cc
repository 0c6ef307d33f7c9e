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

#include "phide/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "phide/cfr.h"
#include "phide/errors.h"
#include "phide/evaluation.h"
#include "phide/zoo.h"

namespace phide {
namespace {

std::string Number(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

double ParseReal(const std::string& key, const std::string& text) {
  double value = 0.;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ConfigError(key + ": '" + text + "' is not a finite number");
  }
  return value;
}

long long ParseInteger(const std::string& key, const std::string& text) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": '" + text + "' is not an integer");
  }
  return value;
}

std::uint64_t ParseUnsigned(const std::string& key, const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(key + ": '" + text + "' is not an unsigned integer");
  }
  return value;
}

bool ParseBool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key + ": '" + text + "' is not a boolean");
}

std::string Trim(const std::string& s) {
  const size_t begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const size_t end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Rethrows ConfigError with the key prepended when a parser does not name it.
template <typename F>
auto WithKey(const std::string& key, F&& parse) {
  try {
    return parse();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(key + ":", 0) == 0) throw;
    throw ConfigError(key + ": " + what);
  }
}

PenaltySchedule MakeSchedule(const ExperimentConfig& config) {
  switch (config.schedule) {
    case ScheduleKind::kConstant:
      return PenaltySchedule::Constant(config.lambda);
    case ScheduleKind::kLinearRamp:
      return PenaltySchedule::LinearRamp(config.lambda, config.iterations);
    case ScheduleKind::kPayoffController:
      return PenaltySchedule::PayoffController(config.lambda, config.target);
  }
  return PenaltySchedule::Constant(config.lambda);
}

LearnerConfig MakeLearner(const ExperimentConfig& config) {
  LearnerConfig learner;
  learner.kind = config.learner;
  learner.learning_rate = config.learning_rate;
  learner.horizon = config.iterations;
  learner.randomize_init = config.randomize_init;
  return learner;
}

BehavioralPolicy RandomPolicy(const InfoIndex& index, std::mt19937_64& rng) {
  BehavioralPolicy policy = BehavioralPolicy::Uniform(index);
  std::gamma_distribution<double> unit_gamma(1., 1.);
  for (int i = 0; i < index.NumStages(); ++i) {
    StagePolicy& stage = policy.mutable_stage(i);
    for (int g = 0; g < stage.num_labels(); ++g) {
      std::span<double> x = stage.MutableLocal(g);
      double total = 0.;
      for (double& v : x) {
        v = std::max(unit_gamma(rng), 1e-300);
        total += v;
      }
      for (double& v : x) v /= total;
    }
  }
  return policy;
}

std::vector<IterationRecord> RunRelaxationTrace(const ExperimentConfig& config,
                                                const InfoIndex& coarse,
                                                const InfoIndex& relaxed,
                                                std::uint64_t seed) {
  RelaxationProblem problem(coarse, relaxed, 0, config.lambda);
  std::mt19937_64 rng = MakeRng(seed);
  BehavioralPolicy mu = config.randomize_init
                            ? RandomPolicy(relaxed, rng)
                            : BehavioralPolicy::Uniform(relaxed);
  BehavioralPolicy gamma = problem.Project(mu);
  std::vector<IterationRecord> trace;
  for (int t = 1; t <= config.iterations; ++t) {
    ProximalResult step = ProximalStep(problem, gamma, config.prox_mode, &mu);
    mu = std::move(step.policy);
    gamma = problem.Project(mu);
    IterationRecord record;
    record.t = t;
    record.expected_payoff = ExpectedReward(coarse, gamma, 0);
    record.penalty_mass = config.lambda * problem.Distance(mu, gamma);
    record.lambda = config.lambda;
    trace.push_back(record);
  }
  return trace;
}

}  // namespace

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "cfr") return Algorithm::kCfr;
  if (name == "ph") return Algorithm::kProgressiveHiding;
  if (name == "rir") return Algorithm::kRelaxation;
  throw ConfigError("algorithm: unknown algorithm '" + name + "'");
}

std::string AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCfr:
      return "cfr";
    case Algorithm::kProgressiveHiding:
      return "ph";
    case Algorithm::kRelaxation:
      return "rir";
  }
  return "unknown";
}

ExperimentConfig ParseConfig(
    const std::map<std::string, std::string>& values) {
  ExperimentConfig config;
  for (const auto& [key, value] : values) {
    if (key == "game") {
      config.game = value;
    } else if (key == "algorithm") {
      config.algorithm = WithKey(key, [&] { return ParseAlgorithm(value); });
    } else if (key == "map") {
      config.map = value;
    } else if (key == "relaxed_map") {
      config.relaxed_map = value;
    } else if (key == "schedule") {
      config.schedule = WithKey(key, [&] { return ParseScheduleKind(value); });
    } else if (key == "lambda") {
      config.lambda = ParseReal(key, value);
    } else if (key == "target") {
      config.target = ParseReal(key, value);
    } else if (key == "iterations" || key == "episodes") {
      config.iterations = static_cast<int>(ParseInteger(key, value));
    } else if (key == "learner") {
      config.learner = WithKey(key, [&] { return ParseLearnerKind(value); });
    } else if (key == "learning_rate") {
      config.learning_rate = ParseReal(key, value);
    } else if (key == "mode") {
      config.mode = WithKey(key, [&] { return ParseSamplingMode(value); });
    } else if (key == "exploration") {
      config.exploration = ParseReal(key, value);
    } else if (key == "prox_mode") {
      config.prox_mode = WithKey(key, [&] { return ParseProxMode(value); });
    } else if (key == "randomize_init") {
      config.randomize_init = ParseBool(key, value);
    } else if (key == "repeats") {
      config.repeats = static_cast<int>(ParseInteger(key, value));
    } else if (key == "seed") {
      config.seed = ParseUnsigned(key, value);
    } else if (key == "threshold") {
      config.threshold = ParseReal(key, value);
    } else if (key == "quantiles") {
      config.quantiles.clear();
      std::stringstream stream(value);
      std::string item;
      while (std::getline(stream, item, ',')) {
        config.quantiles.push_back(ParseReal(key, Trim(item)));
      }
    } else if (key == "threads") {
      config.threads = static_cast<int>(ParseInteger(key, value));
    } else {
      throw ConfigError(key + ": unknown configuration key");
    }
  }
  ValidateConfig(config);
  return config;
}

std::map<std::string, std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(number) +
                        " is not 'key = value'");
    }
    values[Trim(line.substr(0, eq))] = Trim(line.substr(eq + 1));
  }
  return values;
}

void ValidateConfig(const ExperimentConfig& config) {
  if (config.iterations < 0) {
    throw ConfigError("iterations: must be non-negative");
  }
  if (config.repeats < 1) throw ConfigError("repeats: must be positive");
  if (!(config.lambda >= 0.)) throw ConfigError("lambda: must be non-negative");
  if (config.algorithm == Algorithm::kRelaxation && !(config.lambda > 0.)) {
    throw ConfigError("lambda: must be positive for rir");
  }
  if (!(config.exploration > 0.) || config.exploration > 1.) {
    throw ConfigError("exploration: must lie in (0, 1]");
  }
  if (config.threads < 0) throw ConfigError("threads: must be non-negative");
  for (double q : config.quantiles) {
    if (!(q >= 0. && q <= 1.)) {
      throw ConfigError("quantiles: levels must lie in [0, 1]");
    }
  }
  GameWithMaps bundle = WithKey("game", [&] { return BuildGame(config.game); });
  if (!bundle.has_map(config.map)) {
    throw ConfigError("map: game has no map '" + config.map + "'");
  }
  if (!bundle.has_map(config.relaxed_map)) {
    throw ConfigError("relaxed_map: game has no map '" + config.relaxed_map +
                      "'");
  }
  if (config.algorithm == Algorithm::kRelaxation) {
    InfoIndex coarse(bundle.game, bundle.map(config.map));
    InfoIndex relaxed(bundle.game, bundle.map(config.relaxed_map));
    if (!IsFiner(relaxed, coarse)) {
      throw ConfigError("relaxed_map: '" + config.relaxed_map +
                        "' is not finer than '" + config.map + "'");
    }
  }
}

void ApplySeedOverride(ExperimentConfig& config) {
  const char* value = std::getenv("PHIDE_SEED");
  if (value != nullptr && *value != '\0') {
    config.seed = ParseUnsigned("PHIDE_SEED", value);
  }
}

std::uint64_t DeriveSeed(std::uint64_t master, int run) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(run) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RunRecord RunOnce(const ExperimentConfig& config, int run,
                  std::uint64_t seed) {
  const GameWithMaps bundle = BuildGame(config.game);
  const InfoIndex coarse(bundle.game, bundle.map(config.map));
  RunRecord record;
  record.run = run;
  record.seed = seed;
  switch (config.algorithm) {
    case Algorithm::kCfr: {
      CfrConfig cfr;
      cfr.learner = MakeLearner(config);
      cfr.mode = config.mode;
      cfr.exploration = config.exploration;
      cfr.seed = seed;
      CfrSolver solver(coarse, cfr);
      for (int t = 0; t < config.iterations; ++t) solver.Iterate();
      record.trace = solver.trace();
      break;
    }
    case Algorithm::kProgressiveHiding: {
      const InfoIndex relaxed(bundle.game, bundle.map(config.relaxed_map));
      PhConfig ph;
      ph.learner = MakeLearner(config);
      ph.schedule = MakeSchedule(config);
      ph.mode = config.mode;
      ph.exploration = config.exploration;
      ph.seed = seed;
      ProgressiveHiding solver(coarse, relaxed, ph);
      for (int t = 0; t < config.iterations; ++t) solver.Iterate();
      record.trace = solver.trace();
      break;
    }
    case Algorithm::kRelaxation: {
      const InfoIndex relaxed(bundle.game, bundle.map(config.relaxed_map));
      record.trace = RunRelaxationTrace(config, coarse, relaxed, seed);
      break;
    }
  }
  record.final_payoff =
      record.trace.empty() ? 0. : record.trace.back().expected_payoff;
  return record;
}

std::vector<RunRecord> RunExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  std::vector<RunRecord> records(config.repeats);
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.repeats);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (int r = next++; r < config.repeats; r = next++) {
      try {
        records[r] = RunOnce(config, r, DeriveSeed(config.seed, r));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

double NearestRankQuantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(q * static_cast<double>(values.size()));
  const size_t k = rank < 1. ? 0 : static_cast<size_t>(rank) - 1;
  return values[std::min(k, values.size() - 1)];
}

Summary Summarize(const std::vector<RunRecord>& records,
                  const std::vector<double>& quantiles, double threshold) {
  if (records.empty()) throw InvalidArgument("no records to summarize");
  const size_t length = records.front().trace.size();
  for (const RunRecord& r : records) {
    if (r.trace.size() != length) {
      throw InvalidArgument("records have different lengths");
    }
  }
  Summary summary;
  summary.quantile_levels = quantiles;
  summary.threshold = threshold;
  std::vector<double> column(records.size());
  for (size_t t = 0; t < length; ++t) {
    SummaryRow row;
    row.t = records.front().trace[t].t;
    double total = 0.;
    for (size_t r = 0; r < records.size(); ++r) {
      column[r] = records[r].trace[t].expected_payoff;
      total += column[r];
    }
    row.mean = total / records.size();
    for (double q : quantiles) {
      row.quantiles.push_back(NearestRankQuantile(column, q));
    }
    summary.rows.push_back(std::move(row));
  }
  int successes = 0;
  double final_total = 0.;
  for (const RunRecord& r : records) {
    successes += r.final_payoff > threshold ? 1 : 0;
    final_total += r.final_payoff;
  }
  summary.success_rate = static_cast<double>(successes) / records.size();
  summary.final_mean = final_total / records.size();
  return summary;
}

std::string RunsCsv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "run,seed,t,expected_payoff_projected,penalty_mass,"
         "sum_pos_local_regret,lambda_t\n";
  for (const RunRecord& r : records) {
    for (const IterationRecord& row : r.trace) {
      out << r.run << ',' << r.seed << ',' << row.t << ','
          << Number(row.expected_payoff) << ',' << Number(row.penalty_mass)
          << ',' << Number(row.sum_positive_local_regret) << ','
          << Number(row.lambda) << '\n';
    }
  }
  return out.str();
}

std::string SummaryCsv(const Summary& summary) {
  std::ostringstream out;
  out << "t,mean";
  for (double q : summary.quantile_levels) out << ",q" << Number(q);
  out << '\n';
  for (const SummaryRow& row : summary.rows) {
    out << row.t << ',' << Number(row.mean);
    for (double v : row.quantiles) out << ',' << Number(v);
    out << '\n';
  }
  return out.str();
}

std::vector<RunRecord> ParseRunsCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("run,seed,t,", 0) != 0) {
    throw InvalidArgument("runs.csv: missing header");
  }
  std::vector<RunRecord> records;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) {
      throw InvalidArgument("runs.csv: line " + std::to_string(number) +
                            " has " + std::to_string(cells.size()) +
                            " fields");
    }
    try {
      const int run = static_cast<int>(ParseInteger("run", cells[0]));
      if (records.empty() || records.back().run != run) {
        records.push_back({run, ParseUnsigned("seed", cells[1]), {}, 0.});
      }
      IterationRecord record;
      record.t = static_cast<int>(ParseInteger("t", cells[2]));
      record.expected_payoff = ParseReal("payoff", cells[3]);
      record.penalty_mass = ParseReal("penalty", cells[4]);
      record.sum_positive_local_regret = ParseReal("regret", cells[5]);
      record.lambda = ParseReal("lambda", cells[6]);
      records.back().trace.push_back(record);
      records.back().final_payoff = record.expected_payoff;
    } catch (const ConfigError& e) {
      throw InvalidArgument("runs.csv: line " + std::to_string(number) +
                            ": " + e.what());
    }
  }
  return records;
}

void WriteOutputs(const std::string& directory,
                  const std::vector<RunRecord>& records,
                  const Summary& summary) {
  std::filesystem::create_directories(directory);
  const std::filesystem::path root(directory);
  std::ofstream runs(root / "runs.csv");
  runs << RunsCsv(records);
  std::ofstream sum(root / "summary.csv");
  sum << SummaryCsv(summary);
  if (!runs || !sum) {
    throw InvalidArgument("cannot write outputs to '" + directory + "'");
  }
}

}  // namespace phide
