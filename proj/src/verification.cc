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

#include "phide/verification.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "phide/cfr.h"
#include "phide/errors.h"
#include "phide/evaluation.h"
#include "phide/experiment.h"
#include "phide/progressive_hiding.h"
#include "phide/projection.h"
#include "phide/relaxation.h"
#include "phide/zoo.h"

namespace phide {
namespace {

using Clock = std::chrono::steady_clock;

std::string Format(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

CriterionResult Named(int id, const std::string& name) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  return r;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

BehavioralPolicy RandomPolicy(const InfoIndex& index, std::mt19937_64& rng) {
  std::gamma_distribution<double> unit_gamma(1., 1.);
  BehavioralPolicy policy = BehavioralPolicy::Uniform(index);
  const ProductGame& game = index.game();
  for (int i = 0; i < game.NumStages(); ++i) {
    std::vector<double> x(game.NumActions(i));
    for (int g = 0; g < index.NumLabels(i); ++g) {
      double total = 0.;
      for (double& v : x) total += v = std::max(unit_gamma(rng), 1e-300);
      for (double& v : x) v /= total;
      policy.mutable_stage(i).SetLocal(g, x);
    }
  }
  return policy;
}

// gamma keyed by `coarse`, re-keyed by the finer `fine`.
BehavioralPolicy Lift(const InfoIndex& fine, const InfoIndex& coarse,
                      const BehavioralPolicy& gamma) {
  BehavioralPolicy out = BehavioralPolicy::Uniform(fine);
  for (int i = 0; i < fine.game().NumStages(); ++i) {
    for (int g = 0; g < fine.NumLabels(i); ++g) {
      const int h = fine.Members(i)[g].front();
      out.mutable_stage(i).SetLocal(g, gamma.Local(i, coarse.LabelId(i, h)));
    }
  }
  return out;
}

double MaxDifference(const BehavioralPolicy& a, const BehavioralPolicy& b) {
  double worst = 0.;
  for (int i = 0; i < a.NumStages(); ++i) {
    const auto& x = a.stage(i).data();
    const auto& y = b.stage(i).data();
    for (size_t k = 0; k < x.size(); ++k) {
      worst = std::max(worst, std::abs(x[k] - y[k]));
    }
  }
  return worst;
}

// Drops the last CSV column of every line.
std::string WithoutLastColumn(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

struct BoundRun {
  std::string label;
  RegretReport report;
};

std::vector<BoundRun> BoundRuns() {
  struct Setup {
    std::string game, coarse, relaxed;
  };
  const Setup setups[] = {{"matching_pennies", "original", "relaxed"},
                          {"trade_comm:n=2,m=2", "original", "perfect_recall"}};
  std::vector<BoundRun> out;
  for (const Setup& setup : setups) {
    const GameWithMaps bundle = BuildGame(setup.game);
    InfoIndex coarse(bundle.game, bundle.map(setup.coarse));
    InfoIndex relaxed(bundle.game, bundle.map(setup.relaxed));
    for (LearnerKind kind :
         {LearnerKind::kRegretMatching, LearnerKind::kFtrlEntropic}) {
      for (double lambda : {0.05, 0.5}) {
        PhConfig config;
        config.learner.kind = kind;
        config.learner.horizon = 200;
        config.learner.randomize_init = true;
        config.seed = 7;
        config.schedule = PenaltySchedule::Constant(lambda);
        ProgressiveHiding ph(coarse, relaxed, config);
        for (int t = 0; t < 200; ++t) ph.Iterate();
        out.push_back({Format("%s/%s/lambda=%g", setup.game.c_str(),
                              LearnerKindName(kind).c_str(), lambda),
                       ph.Report()});
      }
    }
  }
  return out;
}

ExperimentConfig BaseConfig(const std::string& game, Algorithm algorithm,
                            const std::string& relaxed_map) {
  ExperimentConfig config;
  config.game = game;
  config.algorithm = algorithm;
  config.map = "original";
  config.relaxed_map = relaxed_map;
  return config;
}

}  // namespace

std::optional<double> ReadValueFixture(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.rfind("value", 0) == 0 && eq != std::string::npos) {
      return std::stod(line.substr(eq + 1));
    }
  }
  return std::nullopt;
}

CriterionResult CheckProjectorLaws() {
  const auto start = Clock::now();
  CriterionResult r = Named(1, "projector laws on 200 random games");
  int policies = 0;
  int fixed_points = 0;
  double worst_idempotence = 0.;
  bool ok = true;
  for (int seed = 0; seed < 200; ++seed) {
    const GameWithMaps bundle = BuildRandomGame(seed);
    InfoIndex fine(bundle.game, bundle.map("fine"));
    InfoIndex coarse(bundle.game, bundle.map("coarse"));
    std::mt19937_64 rng = MakeRng(seed);
    for (int k = 0; k < 6; ++k) {
      const BehavioralPolicy base = RandomPolicy(fine, rng);
      // Alternate generic policies with implementable ones.
      const BehavioralPolicy mu =
          k % 2 == 0 ? RandomPolicy(fine, rng)
                     : Lift(fine, coarse, RandomPolicy(coarse, rng));
      const BehavioralPolicy gamma =
          Project(coarse, KeyedPolicy{fine, base}, KeyedPolicy{fine, mu});
      const bool implementable =
          IsImplementable(coarse, KeyedPolicy{fine, mu}, 1e-12);
      const bool fixed = MaxDifference(Lift(fine, coarse, gamma), mu) <= 1e-12;
      ok = ok && implementable == fixed;
      if (k % 2 == 1) ok = ok && fixed;
      fixed_points += fixed;
      const BehavioralPolicy again =
          Project(coarse, KeyedPolicy{fine, base}, KeyedPolicy{coarse, gamma});
      worst_idempotence = std::max(worst_idempotence, MaxDifference(again, gamma));
      ok = ok && IsImplementable(coarse, KeyedPolicy{coarse, gamma}, 1e-12);
      ++policies;
    }
  }
  r.seconds = Seconds(start);
  r.passed = ok && worst_idempotence <= 1e-12 && r.seconds < 30.;
  r.detail = Format(
      "%d policies, %d fixed points, max idempotence error %.3g",
      policies, fixed_points, worst_idempotence);
  return r;
}

CriterionResult CheckRelaxationMonotonicity() {
  const auto start = Clock::now();
  CriterionResult r = Named(2, "Lagrangian traces are non-decreasing");
  struct Setup {
    std::string game, relaxed;
  };
  const Setup setups[] = {{"matching_pennies", "relaxed"},
                          {"trade_comm:n=2,m=2", "perfect_recall"}};
  double worst_step = 0.;
  double total_rise = 0.;
  int traces = 0;
  std::mt19937_64 rng = MakeRng(2);
  for (const Setup& setup : setups) {
    const GameWithMaps bundle = BuildGame(setup.game);
    InfoIndex coarse(bundle.game, bundle.map("original"));
    InfoIndex relaxed(bundle.game, bundle.map(setup.relaxed));
    for (double lambda : {0.05, 0.5, 5.}) {
      RelaxationProblem problem(coarse, relaxed, 0, lambda);
      for (int k = 0; k < 100; ++k) {
        const RirResult run = RunRelaxation(problem, RandomPolicy(relaxed, rng),
                                            20, ProxMode::kBackwardInduction);
        for (size_t t = 1; t < run.lagrangian.size(); ++t) {
          worst_step =
              std::min(worst_step, run.lagrangian[t] - run.lagrangian[t - 1]);
        }
        total_rise += run.lagrangian.back() - run.lagrangian.front();
        ++traces;
      }
    }
  }
  r.seconds = Seconds(start);
  r.passed = worst_step >= -1e-9 && r.seconds < 120.;
  r.detail = Format(
      "%d traces of 20 rounds, most negative step %.3g, mean total rise %.4f",
      traces, worst_step, total_rise / traces);
  return r;
}

CriterionResult CheckReduction() {
  const auto start = Clock::now();
  CriterionResult r = Named(3, "progressive hiding without relaxation replays CFR");
  int compared = 0;
  int identical = 0;
  for (const std::string game : {"matching_pennies", "trade_comm:n=2,m=2"}) {
    for (LearnerKind kind :
         {LearnerKind::kRegretMatching, LearnerKind::kFtrlEntropic}) {
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        ExperimentConfig config =
            BaseConfig(game, Algorithm::kCfr, "original");
        config.learner = kind;
        config.iterations = 200;
        config.randomize_init = true;
        config.seed = seed;
        const std::string cfr = RunsCsv(RunExperiment(config));
        config.algorithm = Algorithm::kProgressiveHiding;
        const std::string ph = RunsCsv(RunExperiment(config));
        ++compared;
        identical += WithoutLastColumn(cfr) == WithoutLastColumn(ph);
      }
    }
  }
  r.seconds = Seconds(start);
  r.passed = identical == compared;
  r.detail = Format("%d of %d runs.csv payloads identical (lambda_t excluded)",
                    identical, compared);
  return r;
}

CriterionResult CheckRegretBound() {
  const auto start = Clock::now();
  CriterionResult r = Named(4, "regret lower bound within the local regret sum");
  bool ok = true;
  double worst_slack = 1e300;
  int runs = 0;
  for (const BoundRun& run : BoundRuns()) {
    const RegretReport& rep = run.report;
    ok = ok && rep.relaxed_perfect_recall && rep.lower_bound_available &&
         rep.regret_bound_holds;
    worst_slack = std::min(
        worst_slack, rep.sum_positive_local_regret - rep.regret_lower_bound);
    ++runs;
  }
  r.seconds = Seconds(start);
  r.passed = ok && r.seconds < 300.;
  r.detail = Format("%d runs of T=200, min slack %.3g", runs, worst_slack);
  return r;
}

CriterionResult CheckPenaltyBound() {
  const auto start = Clock::now();
  CriterionResult r = Named(5, "average penalty within the local regret sum + 2|r|");
  bool ok = true;
  double worst_slack = 1e300;
  int runs = 0;
  for (const BoundRun& run : BoundRuns()) {
    const RegretReport& rep = run.report;
    ok = ok && rep.penalty_bound_holds;
    worst_slack = std::min(worst_slack, rep.sum_positive_local_regret +
                                            2. * rep.max_abs_reward -
                                            rep.average_penalty);
    ++runs;
  }
  r.seconds = Seconds(start);
  r.passed = ok;
  r.detail = Format("%d runs of T=200, min slack %.3g", runs, worst_slack);
  return r;
}

CriterionResult CheckMatchingPennies() {
  const auto start = Clock::now();
  CriterionResult r = Named(6, "Matching Pennies success rates");
  ExperimentConfig config =
      BaseConfig("matching_pennies", Algorithm::kCfr, "original");
  config.mode = SamplingMode::kMonteCarlo;
  config.iterations = 400;
  config.repeats = 200;
  config.lambda = 0.05;
  config.threshold = 0.95;
  config.seed = 6;
  const Summary cfr = Summarize(RunExperiment(config), {0.1, 0.9}, 0.95);
  config.algorithm = Algorithm::kProgressiveHiding;
  config.relaxed_map = "relaxed";
  const Summary ph = Summarize(RunExperiment(config), {0.1, 0.9}, 0.95);
  r.seconds = Seconds(start);
  r.passed = cfr.success_rate <= 0.05 && ph.success_rate >= 0.30 &&
             r.seconds < 600.;
  r.detail = Format("MC-CFR %.3f (<= 0.05), PH %.3f (>= 0.30)",
                    cfr.success_rate, ph.success_rate);
  return r;
}

CriterionResult CheckTradeComm() {
  const auto start = Clock::now();
  CriterionResult r = Named(7, "Trade Comm ordering against the CFR baseline");
  bool ok = true;
  std::string detail;
  for (const std::string game : {"trade_comm:n=2,m=2", "trade_comm:n=3,m=2"}) {
    ExperimentConfig config = BaseConfig(game, Algorithm::kCfr, "original");
    config.iterations = 1000;
    config.repeats = 100;
    config.randomize_init = true;
    config.lambda = 2.;
    config.seed = 7;
    const double baseline =
        Summarize(RunExperiment(config), {0.1, 0.9}, 0.95).final_mean;
    config.algorithm = Algorithm::kProgressiveHiding;
    config.relaxed_map = "perfect_recall";
    const double recall =
        Summarize(RunExperiment(config), {0.1, 0.9}, 0.95).final_mean;
    config.relaxed_map = "cheat";
    const double cheat =
        Summarize(RunExperiment(config), {0.1, 0.9}, 0.95).final_mean;
    const GameWithMaps bundle = BuildGame(game);
    InfoIndex original(bundle.game, bundle.map("original"));
    const double optimum =
        BestResponseValue(original, 0, BehavioralPolicy::Uniform(original));
    ok = ok && recall >= baseline + 0.05 && cheat > baseline;
    detail += Format(
        "%s baseline %.4f, PR %.4f (margin %+.4f, ceiling %+.4f), cheat %.4f; ",
        game.c_str(), baseline, recall, recall - baseline, optimum - baseline,
        cheat);
  }
  r.seconds = Seconds(start);
  r.passed = ok && r.seconds < 600.;
  r.detail = detail.substr(0, detail.size() - 2);
  return r;
}

CriterionResult CheckOptimalValues(std::optional<double> trade_comm_3_2) {
  const auto start = Clock::now();
  CriterionResult r = Named(8, "optimal values");
  auto value = [](const std::string& selector) {
    const GameWithMaps bundle = BuildGame(selector);
    InfoIndex index(bundle.game, bundle.map("original"));
    return BestResponseValue(index, 0, BehavioralPolicy::Uniform(index));
  };
  const double tc22 = value("trade_comm:n=2,m=2");
  const double mp = value("matching_pennies");
  const double tc32 = value("trade_comm:n=3,m=2");
  r.seconds = Seconds(start);
  r.passed = std::abs(tc22 - 1.) <= 1e-12 && std::abs(mp - 1.) <= 1e-12 &&
             trade_comm_3_2.has_value() &&
             std::abs(tc32 - *trade_comm_3_2) <= 1e-12;
  r.detail = Format("TC(2,2) %.15g, MP %.15g, TC(3,2) %.15g (fixture %s)",
                    tc22, mp, tc32,
                    trade_comm_3_2 ? Format("%.15g", *trade_comm_3_2).c_str()
                                   : "missing");
  return r;
}

CriterionResult CheckCfrSanity() {
  const auto start = Clock::now();
  CriterionResult r = Named(9, "exact CFR on Trade Comm with perfect recall");
  const GameWithMaps bundle = BuildTradeComm({2, 2});
  InfoIndex index(bundle.game, bundle.map("perfect_recall"));
  CfrSolver solver(index, CfrConfig{});
  for (int t = 0; t < 5000; ++t) solver.Iterate();
  const double value = ExpectedReward(index, solver.AveragePolicy(), 0);
  r.seconds = Seconds(start);
  r.passed = std::abs(value - 1.) <= 0.01;
  r.detail = Format("average policy value %.6f after 5000 iterations", value);
  return r;
}

std::vector<CriterionResult> RunCriteria(
    const std::vector<int>& ids, const std::string& fixture_path,
    const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> selected = ids;
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<CriterionResult> out;
  for (int id : selected) {
    CriterionResult result;
    try {
      switch (id) {
        case 1: result = CheckProjectorLaws(); break;
        case 2: result = CheckRelaxationMonotonicity(); break;
        case 3: result = CheckReduction(); break;
        case 4: result = CheckRegretBound(); break;
        case 5: result = CheckPenaltyBound(); break;
        case 6: result = CheckMatchingPennies(); break;
        case 7: result = CheckTradeComm(); break;
        case 8: result = CheckOptimalValues(ReadValueFixture(fixture_path)); break;
        case 9: result = CheckCfrSanity(); break;
        default:
          throw InvalidArgument("no criterion " + std::to_string(id));
      }
    } catch (const Error& e) {
      result.id = id;
      result.name = "error";
      result.passed = false;
      result.detail = e.what();
    }
    if (on_result) on_result(result);
    out.push_back(result);
  }
  return out;
}

std::string FormatCriterion(const CriterionResult& result) {
  return Format("criterion %d %s %s: %s (%.1f s)", result.id,
                result.passed ? "PASS" : "FAIL", result.name.c_str(),
                result.detail.c_str(), result.seconds);
}

}  // namespace phide
