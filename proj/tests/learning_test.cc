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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "phide/cfr.h"
#include "phide/counterfactual.h"
#include "phide/errors.h"
#include "phide/evaluation.h"
#include "phide/learner_table.h"
#include "phide/projection.h"
#include "phide/regret.h"
#include "phide/zoo.h"

namespace phide {
namespace {

double RunLearner(LearnerKind kind, int num_actions, int horizon,
                  const std::function<std::vector<double>(int, const std::vector<double>&)>& adversary) {
  RegretMinimizer learner(kind, num_actions,
                          DefaultLearningRate(num_actions, horizon));
  std::vector<std::vector<double>> decisions, rewards;
  for (int t = 0; t < horizon; ++t) {
    decisions.push_back(learner.Decide());
    rewards.push_back(adversary(t, decisions.back()));
    learner.Observe(rewards.back());
  }
  return ExternalRegret(decisions, rewards);
}

TEST_CASE("learner kinds parse") {
  CHECK(ParseLearnerKind("regret_matching") == LearnerKind::kRegretMatching);
  CHECK(ParseLearnerKind("regret_matching_plus") ==
        LearnerKind::kRegretMatchingPlus);
  CHECK(ParseLearnerKind("ftrl_entropic") == LearnerKind::kFtrlEntropic);
  CHECK_THROWS_AS(ParseLearnerKind("hedge"), ConfigError);
  for (auto kind : {LearnerKind::kRegretMatching,
                    LearnerKind::kRegretMatchingPlus,
                    LearnerKind::kFtrlEntropic}) {
    CHECK(ParseLearnerKind(LearnerKindName(kind)) == kind);
  }
}

TEST_CASE("regret matching decisions") {
  RegretMinimizer rm(LearnerKind::kRegretMatching, 3, 0.1);
  CHECK(rm.Decide() == std::vector<double>{1. / 3, 1. / 3, 1. / 3});
  rm.Observe(std::vector<double>{1., 0., 0.});
  // Regrets (2/3, -1/3, -1/3) put all mass on the first action.
  CHECK(rm.Decide() == std::vector<double>{1., 0., 0.});
  rm.Observe(std::vector<double>{0., 3., 0.});
  // Regrets (2/3, 8/3, -1/3).
  const auto x = rm.Decide();
  CHECK(x[0] == doctest::Approx(0.2));
  CHECK(x[1] == doctest::Approx(0.8));
  CHECK(x[2] == 0.);

  RegretMinimizer plus(LearnerKind::kRegretMatchingPlus, 2, 0.1);
  plus.Observe(std::vector<double>{1., 0.});
  CHECK(plus.cumulative()[1] == 0.);
  CHECK(plus.cumulative()[0] == doctest::Approx(0.5));
}

TEST_CASE("entropic FTRL is a softmax of cumulative rewards") {
  RegretMinimizer ftrl(LearnerKind::kFtrlEntropic, 2, 0.5);
  ftrl.Observe(std::vector<double>{2., 0.});
  const auto x = ftrl.Decide();
  CHECK(x[0] == doctest::Approx(std::exp(1.) / (std::exp(1.) + 1.)));
  ftrl.Observe(std::vector<double>{1e6, 0.});
  CHECK(ftrl.Decide()[0] == 1.);
  CHECK(DefaultLearningRate(4, 100) == doctest::Approx(std::sqrt(std::log(4.) / 100)));
  CHECK_THROWS_AS(RegretMinimizer(LearnerKind::kFtrlEntropic, 2, 0.), InvalidArgument);
}

TEST_CASE("warm start reproduces the initial decision") {
  const std::vector<double> x{0.2, 0.5, 0.3};
  for (auto kind : {LearnerKind::kRegretMatching,
                    LearnerKind::kRegretMatchingPlus,
                    LearnerKind::kFtrlEntropic}) {
    RegretMinimizer learner(kind, 3, 0.7);
    learner.WarmStart(x);
    const auto y = learner.Decide();
    for (int a = 0; a < 3; ++a) CHECK(y[a] == doctest::Approx(x[a]).epsilon(1e-12));
  }
  RegretMinimizer learner(LearnerKind::kRegretMatching, 2, 0.1);
  CHECK_THROWS_AS(learner.WarmStart(std::vector<double>{1., 0.}), InvalidArgument);
  CHECK_THROWS_AS(learner.Observe(std::vector<double>{1.}), InvalidArgument);
  CHECK_THROWS_AS(learner.Observe(std::vector<double>{NAN, 0.}), InvalidArgument);
}

TEST_CASE("external regret stays within the worst-case bound") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0., 1.);
  const int horizon = 2000;
  for (int num_actions : {2, 5}) {
    const double rm_bound = std::sqrt(static_cast<double>(num_actions) * horizon);
    const double hedge_bound =
        std::sqrt(horizon * std::log(static_cast<double>(num_actions))) * 9. / 8.;
    auto random = [&](int, const std::vector<double>&) {
      std::vector<double> r(num_actions);
      for (double& v : r) v = unit(rng);
      return r;
    };
    // Rewards the action the learner currently plays least.
    auto adversarial = [&](int, const std::vector<double>& x) {
      std::vector<double> r(num_actions, 0.);
      r[std::min_element(x.begin(), x.end()) - x.begin()] = 1.;
      return r;
    };
    for (const auto& adversary :
         {std::function<std::vector<double>(int, const std::vector<double>&)>(random),
          std::function<std::vector<double>(int, const std::vector<double>&)>(adversarial)}) {
      CHECK(RunLearner(LearnerKind::kRegretMatching, num_actions, horizon, adversary) <= rm_bound);
      CHECK(RunLearner(LearnerKind::kRegretMatchingPlus, num_actions, horizon, adversary) <= rm_bound);
      CHECK(RunLearner(LearnerKind::kFtrlEntropic, num_actions, horizon, adversary) <= hedge_bound);
    }
  }
}

TEST_CASE("learner table local regret matches the external regret") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex map(mp.game, mp.map("relaxed"));
  std::mt19937_64 rng(1);
  LearnerConfig config;
  config.randomize_init = true;
  LearnerTable table(map, {0, 1}, config, rng);
  BehavioralPolicy policy = BehavioralPolicy::Uniform(map);
  // Dirichlet draws leave the initial decisions away from uniform.
  table.Decide(policy);
  CHECK(policy.Local(1, 0)[0] != doctest::Approx(1. / 3));

  std::vector<std::vector<double>> decisions, rewards;
  std::uniform_real_distribution<double> unit(-1., 1.);
  for (int t = 0; t < 50; ++t) {
    table.Decide(policy);
    for (int i : {0, 1}) {
      for (int g = 0; g < map.NumLabels(i); ++g) {
        std::vector<double> r(mp.game.NumActions(i));
        for (double& v : r) v = unit(rng);
        const auto x = policy.Local(i, g);
        table.Observe(i, g, r, x);
        if (i == 1 && g == 1) {
          decisions.emplace_back(x.begin(), x.end());
          rewards.push_back(r);
        }
      }
    }
    table.EndIteration();
  }
  CHECK(table.LocalRegret(1, 1) ==
        doctest::Approx(ExternalRegret(decisions, rewards) / 50).epsilon(1e-12));
  double total = 0.;
  for (int i : {0, 1}) {
    for (int g = 0; g < map.NumLabels(i); ++g) {
      total += std::max(0., table.LocalRegret(i, g));
    }
  }
  CHECK(table.SumPositiveLocalRegret() == doctest::Approx(total));
  CHECK(ParseSamplingMode("mc") == SamplingMode::kMonteCarlo);
  CHECK_THROWS_AS(ParseSamplingMode("outcome"), ConfigError);
}

TEST_CASE("conditional action values agree with the enumeration oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(-1., 1.);
  for (int seed = 0; seed < 25; ++seed) {
    GameWithMaps g = BuildRandomGame(300 + seed);
    for (const std::string name : {"fine", "coarse"}) {
      const InformationMap& raw_map = g.map(name);
      InfoIndex map(g.game, raw_map);
      const oracle::RawPolicy raw = oracle::RandomRaw(g.game, raw_map, rng);
      const BehavioralPolicy mu = oracle::ToDense(raw, map);
      const int n = g.game.NumStages();
      HistoryCosts later(n), own(n);
      for (int i = 0; i < n; ++i) {
        later[i].resize(g.game.NumHistories());
        own[i].resize(g.game.NumHistories());
        for (double& v : later[i]) v = unit(rng);
        for (double& v : own[i]) v = unit(rng);
      }
      const auto stages = g.game.StagesOf(0);
      const double floor = 0.05;
      const LabelActionTable values =
          ConditionalActionValues(map, mu, stages, floor, later, own);
      for (int i : stages) {
        for (int label = 0; label < map.NumLabels(i); ++label) {
          for (int d = 0; d < g.game.NumActions(i); ++d) {
            const double expected = oracle::Conditional(
                g.game, raw_map, raw.Fn(), i, map.RawLabel(i, label), d, floor,
                [&](const History& h) {
                  const int index = g.game.IndexOf(h);
                  double f = g.game.Reward(index, 0) - own[i][index];
                  for (int j : stages) {
                    if (j > i) f -= later[j][index];
                  }
                  return f;
                });
            CHECK(values[i][label * g.game.NumActions(i) + d] ==
                  doctest::Approx(expected).epsilon(1e-10));
          }
        }
      }
    }
  }
}

TEST_CASE("conditional action values reject unreachable labels") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex map(mp.game, mp.map("relaxed"));
  BehavioralPolicy mu = BehavioralPolicy::Uniform(map);
  mu.mutable_stage(0) = StagePolicy::Constant(map.NumLabels(0), 2, kSame);
  const int stages[] = {1};
  CHECK_THROWS_AS(ConditionalActionValues(map, mu, stages, 0.), ZeroReachLabel);
  CHECK_NOTHROW(ConditionalActionValues(map, mu, stages, 1e-6));
}

TEST_CASE("sampled action values are unbiased") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex map(mp.game, mp.map("original"));
  const ProductGame& game = mp.game;
  std::mt19937_64 rng(5);
  BehavioralPolicy mu = BehavioralPolicy::Uniform(map);
  mu.mutable_stage(0).SetLocal(0, std::vector<double>{0.7, 0.3});
  mu.mutable_stage(1).SetLocal(0, std::vector<double>{0.5, 0.2, 0.3});
  HistoryCosts later(2), own(2);
  own[1].resize(game.NumHistories());
  later[1].resize(game.NumHistories());
  for (int h = 0; h < game.NumHistories(); ++h) {
    own[1][h] = 0.1 * h;
    later[1][h] = 0.05 * (h % 3);
  }
  const int stages[] = {0, 1};
  // Expected estimate per (stage, label, d): sum over histories in the label
  // with h_i = d of P(nature) * prod_{j > i} mu_j * (r - own_i - later costs).
  auto slot = [&](int i, int h) {
    return map.LabelId(i, h) * game.NumActions(i) + game.ActionAt(h, i);
  };
  std::vector<std::vector<double>> expected(2);
  for (int i : stages) {
    expected[i].assign(map.NumLabels(i) * game.NumActions(i), 0.);
  }
  for (int h = 0; h < game.NumHistories(); ++h) {
    const double p = game.Nature(game.NatureOf(h)).weight;
    const double tail = mu.Local(1, map.LabelId(1, h))[game.ActionAt(h, 1)];
    expected[0][slot(0, h)] += p * tail * (game.Reward(h, 0) - later[1][h]);
    expected[1][slot(1, h)] += p * (game.Reward(h, 0) - own[1][h]);
  }
  const int samples = 400000;
  std::vector<std::vector<double>> sum(2);
  for (int i : stages) sum[i].assign(expected[i].size(), 0.);
  for (int s = 0; s < samples; ++s) {
    const SampledValues v =
        SampleActionValues(map, mu, stages, 0.3, later, own, rng);
    for (const SampledStageValue& stage : v.stages) {
      CHECK(stage.label == map.LabelId(stage.stage, v.history));
      const int n = game.NumActions(stage.stage);
      for (int a = 0; a < n; ++a) {
        sum[stage.stage][stage.label * n + a] += stage.values[a];
      }
    }
  }
  for (int i : stages) {
    for (size_t k = 0; k < expected[i].size(); ++k) {
      CHECK(sum[i][k] / samples ==
            doctest::Approx(expected[i][k]).epsilon(0.02).scale(1.));
    }
  }
}

TEST_CASE("counterfactual rewards of a single stage") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex map(mp.game, mp.map("relaxed"));
  BehavioralPolicy mu = BehavioralPolicy::Uniform(map);
  // Player 2 sees the coin of Nature: matching is worth the match payoff.
  const auto r = CounterfactualRewards(map, mu, 1, map.LabelId(1, 0));
  CHECK(r.size() == 3);
  const auto values = ConditionalActionValues(map, mu, std::vector<int>{1}, 1e-6);
  for (int a = 0; a < 3; ++a) CHECK(r[a] == values[1][map.LabelId(1, 0) * 3 + a]);
}

TEST_CASE("exact CFR solves perfect-recall Matching Pennies") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex map(mp.game, mp.map("relaxed"));
  CfrConfig config;
  CfrSolver solver(map, config);
  for (int t = 0; t < 2000; ++t) solver.Iterate();
  CHECK(solver.iteration() == 2000);
  CHECK(solver.trace().size() == 2000);
  CHECK(solver.trace().back().t == 2000);
  const BehavioralPolicy avg = solver.AveragePolicy();
  CHECK(ExpectedReward(map, avg, 0) > 0.99);
  CHECK(solver.learners().SumPositiveLocalRegret() < 0.05);
}

TEST_CASE("CFR trace rows report the iterate's payoff") {
  GameWithMaps tc = BuildTradeComm({2, 2});
  InfoIndex map(tc.game, tc.map("original"));
  CfrConfig config;
  config.learner.kind = LearnerKind::kRegretMatchingPlus;
  CfrSolver solver(map, config);
  for (int t = 0; t < 20; ++t) {
    const BehavioralPolicy& mu = solver.Iterate();
    const IterationRecord& row = solver.trace().back();
    CHECK(row.t == t + 1);
    CHECK(row.expected_payoff == ExpectedReward(map, mu, 0));
    CHECK(row.penalty_mass == 0.);
    CHECK(row.lambda == 0.);
    CHECK(row.sum_positive_local_regret ==
          solver.learners().SumPositiveLocalRegret());
  }
  CHECK(IsImplementable(map, KeyedPolicy{map, solver.AveragePolicy()}));
}

TEST_CASE("Monte Carlo CFR is reproducible per seed") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex map(mp.game, mp.map("original"));
  CfrConfig config;
  config.mode = SamplingMode::kMonteCarlo;
  config.seed = 99;
  CfrSolver a(map, config), b(map, config);
  config.seed = 100;
  CfrSolver c(map, config);
  bool differs = false;
  for (int t = 0; t < 100; ++t) {
    const auto pa = a.Iterate().Local(1, 0);
    const auto pb = b.Iterate().Local(1, 0);
    const auto pc = c.Iterate().Local(1, 0);
    CHECK(std::vector<double>(pa.begin(), pa.end()) ==
          std::vector<double>(pb.begin(), pb.end()));
    differs |= std::vector<double>(pa.begin(), pa.end()) !=
               std::vector<double>(pc.begin(), pc.end());
  }
  CHECK(differs);
  config.exploration = 0.;
  CHECK_THROWS_AS(CfrSolver(map, config), ConfigError);
  config.exploration = 0.1;
  config.prefix_floor = 1.;
  CHECK_THROWS_AS(CfrSolver(map, config), ConfigError);
}

}  // namespace
}  // namespace phide
