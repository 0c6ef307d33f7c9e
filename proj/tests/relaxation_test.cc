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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "phide/errors.h"
#include "phide/evaluation.h"
#include "phide/projection.h"
#include "phide/relaxation.h"
#include "phide/zoo.h"

namespace phide {
namespace {

// sum_i E_{Q_base}[ ||mu_i(h) - gamma_i(h)||^2 ] by enumeration.
double OracleDistance(const ProductGame& game, const oracle::LocalFn& base,
                      const oracle::LocalFn& mu, const oracle::LocalFn& gamma,
                      const std::vector<int>& stages) {
  double total = 0.;
  for (const History& h : oracle::AllHistories(game)) {
    const double q = oracle::Probability(game, base, h);
    for (int i : stages) total += q * oracle::SqDist(mu(i, h), gamma(i, h));
  }
  return total;
}

oracle::LocalFn Keyed(const InfoIndex& index, const BehavioralPolicy& policy) {
  return [&index, policy](int i, const History& h) {
    const auto x = policy.Local(i, index.LabelId(i, index.game().IndexOf(h)));
    return std::vector<double>(x.begin(), x.end());
  };
}

TEST_CASE("simplex projection") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0., 2.);
  std::gamma_distribution<double> unit_gamma(1., 1.);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<double> p(n);
    for (double& v : p) v = normal(rng);
    const std::vector<double> x = ProjectOntoSimplex(p);
    double sum = 0.;
    for (double v : x) {
      CHECK(v >= 0.);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.).epsilon(1e-14));
    // No point of the simplex is closer.
    const double d = oracle::SqDist(x, p);
    for (int k = 0; k < 30; ++k) {
      std::vector<double> y(n);
      double total = 0.;
      for (double& v : y) total += v = unit_gamma(rng);
      for (double& v : y) v /= total;
      CHECK(oracle::SqDist(y, p) >= d - 1e-12);
    }
  }
  CHECK(ProjectOntoSimplex(std::vector<double>{0.3, 0.7}) ==
        std::vector<double>{0.3, 0.7});
  CHECK(ProjectOntoSimplex(std::vector<double>{5., 0.}) ==
        std::vector<double>{1., 0.});
  CHECK_THROWS_AS(ProjectOntoSimplex(std::vector<double>{}), InvalidArgument);
  CHECK(ParseProxMode("coordinate_ascent") == ProxMode::kCoordinateAscent);
  CHECK_THROWS_AS(ParseProxMode("newton"), ConfigError);
}

TEST_CASE("problem validation") {
  GameWithMaps tc = BuildTradeComm({2, 2});
  InfoIndex original(tc.game, tc.map("original"));
  InfoIndex cheat(tc.game, tc.map("cheat"));
  InfoIndex recall(tc.game, tc.map("perfect_recall"));
  CHECK_THROWS_AS(RelaxationProblem(original, cheat, 0, 1.), InvalidArgument);
  CHECK_THROWS_AS(RelaxationProblem(original, recall, 0, -1.), InvalidArgument);
  BehavioralPolicy base = BehavioralPolicy::Uniform(recall);
  base.mutable_stage(0) = StagePolicy::Constant(recall.NumLabels(0), 2, 0);
  CHECK_THROWS_AS(RelaxationProblem(original, recall, 0, 1., base),
                  InvalidArgument);
  RelaxationProblem imperfect(original, original, 0, 1.);
  CHECK_THROWS_AS(ProximalStep(imperfect, BehavioralPolicy::Uniform(original),
                               ProxMode::kBackwardInduction),
                  PerfectRecallRequired);
  CHECK_NOTHROW(ProximalStep(imperfect, BehavioralPolicy::Uniform(original),
                             ProxMode::kCoordinateAscent));
}

TEST_CASE("lagrangian") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex coarse(mp.game, mp.map("original"));
  InfoIndex relaxed(mp.game, mp.map("relaxed"));
  const double lambda = 0.7;
  RelaxationProblem problem(coarse, relaxed, 0, lambda);
  RelaxationProblem free(coarse, relaxed, 0, 0.);

  // Bob plays the winning coin given Nature and Alice; Alice is uniform.
  BehavioralPolicy mu = BehavioralPolicy::Uniform(relaxed);
  for (int g = 0; g < relaxed.NumLabels(1); ++g) {
    const int h = relaxed.Members(1)[g][0];
    const History hist = mp.game.GetHistory(h);
    std::vector<double> x(3, 0.);
    const int alice = hist.actions[0];
    x[hist.nature == kSame ? alice : 1 - alice] = 1.;
    mu.mutable_stage(1).SetLocal(g, x);
  }
  const double reward = ExpectedReward(relaxed, mu, 0);
  CHECK(reward == 1.);
  const BehavioralPolicy uniform = BehavioralPolicy::Uniform(relaxed);
  const BehavioralPolicy gamma = problem.Project(mu);
  const double distance =
      OracleDistance(mp.game, Keyed(relaxed, uniform), Keyed(relaxed, mu),
                     Keyed(coarse, gamma), {0, 1});
  CHECK(distance > 0.);
  CHECK(problem.Distance(mu, gamma) == doctest::Approx(distance).epsilon(1e-13));
  CHECK(problem.Lagrangian(mu) ==
        doctest::Approx(reward - lambda * distance).epsilon(1e-13));
  CHECK(free.Lagrangian(mu) == reward);

  // An implementable policy carries no penalty.
  const BehavioralPolicy lifted = problem.Lift(gamma);
  CHECK(problem.Lagrangian(lifted) == ExpectedReward(relaxed, lifted, 0));
}

BehavioralPolicy RandomPolicy(const GameWithMaps& g, const std::string& name,
                              const InfoIndex& index, std::mt19937_64& rng) {
  return oracle::ToDense(oracle::RandomRaw(g.game, g.map(name), rng), index);
}

TEST_CASE("proximal step optimality") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0., 1.);
  GameWithMaps mp = BuildMatchingPennies();
  GameWithMaps tc = BuildTradeComm({2, 2});
  struct Case {
    const GameWithMaps* g;
    std::string coarse, relaxed;
  };
  for (const Case& c : {Case{&mp, "original", "relaxed"},
                        Case{&tc, "original", "perfect_recall"}}) {
    InfoIndex coarse(c.g->game, c.g->map(c.coarse));
    InfoIndex relaxed(c.g->game, c.g->map(c.relaxed));
    for (double lambda : {0.05, 0.5, 5.}) {
      RelaxationProblem problem(coarse, relaxed, 0, lambda);
      for (int trial = 0; trial < 3; ++trial) {
        const BehavioralPolicy gamma =
            problem.Project(RandomPolicy(*c.g, c.relaxed, relaxed, rng));
        const BehavioralPolicy lifted = problem.Lift(gamma);
        for (ProxMode mode :
             {ProxMode::kBackwardInduction, ProxMode::kCoordinateAscent}) {
          const ProximalResult result = ProximalStep(problem, gamma, mode);
          CHECK(result.converged);
          const double value = problem.ProximalObjective(result.policy, gamma);
          CHECK(value >= problem.ProximalObjective(lifted, gamma) - 1e-12);
          // No single-slot deviation helps.
          for (int i : problem.stages()) {
            for (int g = 0; g < relaxed.NumLabels(i); ++g) {
              for (int k = 0; k < 5; ++k) {
                BehavioralPolicy deviated = result.policy;
                std::vector<double> x(c.g->game.NumActions(i));
                double total = 0.;
                for (double& v : x) total += v = unit(rng);
                for (double& v : x) v /= total;
                deviated.mutable_stage(i).SetLocal(g, x);
                CHECK(problem.ProximalObjective(deviated, gamma) <=
                      value + 1e-9);
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("proximal step limits") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex coarse(mp.game, mp.map("original"));
  InfoIndex relaxed(mp.game, mp.map("relaxed"));
  const BehavioralPolicy gamma = BehavioralPolicy::Uniform(coarse);

  RelaxationProblem heavy(coarse, relaxed, 0, 1e6);
  const ProximalResult pinned =
      ProximalStep(heavy, gamma, ProxMode::kBackwardInduction);
  CHECK(heavy.Distance(pinned.policy, gamma) < 1e-3);

  RelaxationProblem light(coarse, relaxed, 0, 1e-9);
  const ProximalResult best =
      ProximalStep(light, gamma, ProxMode::kBackwardInduction);
  const double optimum = BestResponseValue(relaxed, 0, BehavioralPolicy::Uniform(relaxed));
  CHECK(optimum == doctest::Approx(1.).epsilon(1e-12));
  CHECK(ExpectedReward(relaxed, best.policy, 0) >= optimum - 1e-6);

  // An implementable optimum of the relaxed game is a fixed point.
  GameWithMaps one = BuildTradeComm({1, 1});
  InfoIndex one_coarse(one.game, one.map("original"));
  InfoIndex one_relaxed(one.game, one.map("perfect_recall"));
  RelaxationProblem fixed(one_coarse, one_relaxed, 0, 0.5);
  const BehavioralPolicy any = BehavioralPolicy::Uniform(one_coarse);
  const ProximalResult stay =
      ProximalStep(fixed, any, ProxMode::kBackwardInduction);
  const BehavioralPolicy lifted = fixed.Lift(any);
  for (int i : fixed.stages()) {
    for (int g = 0; g < one_relaxed.NumLabels(i); ++g) {
      const auto x = stay.policy.Local(i, g);
      const auto y = lifted.Local(i, g);
      for (size_t a = 0; a < x.size(); ++a) CHECK(x[a] == doctest::Approx(y[a]));
    }
  }
}

TEST_CASE("relaxation rounds") {
  std::mt19937_64 rng(77);
  GameWithMaps mp = BuildMatchingPennies();
  GameWithMaps tc = BuildTradeComm({2, 2});
  struct Case {
    const GameWithMaps* g;
    std::string coarse, relaxed;
  };
  for (const Case& c : {Case{&mp, "original", "relaxed"},
                        Case{&tc, "original", "perfect_recall"}}) {
    InfoIndex coarse(c.g->game, c.g->map(c.coarse));
    InfoIndex relaxed(c.g->game, c.g->map(c.relaxed));
    for (double lambda : {0.05, 0.5, 5.}) {
      RelaxationProblem problem(coarse, relaxed, 0, lambda);
      for (int trial = 0; trial < 10; ++trial) {
        const BehavioralPolicy initial =
            RandomPolicy(*c.g, c.relaxed, relaxed, rng);
        const RirResult zero =
            RunRelaxation(problem, initial, 0, ProxMode::kBackwardInduction);
        CHECK(zero.lagrangian.size() == 1);
        CHECK(zero.mu.Local(0, 0)[0] == initial.Local(0, 0)[0]);
        CHECK(zero.gamma.Local(1, 0)[0] ==
              problem.Project(initial).Local(1, 0)[0]);

        const RirResult run =
            RunRelaxation(problem, initial, 15, ProxMode::kBackwardInduction);
        CHECK(run.lagrangian.size() == 16);
        CHECK(run.lagrangian.front() == problem.Lagrangian(initial));
        for (size_t t = 1; t < run.lagrangian.size(); ++t) {
          CHECK(run.lagrangian[t] >= run.lagrangian[t - 1] - 1e-9);
        }
        CHECK(IsImplementable(coarse, KeyedPolicy{coarse, run.gamma}));
      }
    }
  }
}

TEST_CASE("relaxed value bounds the implementable optimum") {
  GameWithMaps mp = BuildMatchingPennies();
  InfoIndex coarse(mp.game, mp.map("original"));
  InfoIndex relaxed(mp.game, mp.map("relaxed"));
  const double implementable =
      BestResponseValue(coarse, 0, BehavioralPolicy::Uniform(coarse));
  for (double lambda : {0.05, 0.5, 5.}) {
    RelaxationProblem problem(coarse, relaxed, 0, lambda);
    double best_lagrangian = -1e300;
    oracle::ForEachDeterministic(
        mp.game, mp.map("relaxed"), oracle::UniformRaw(mp.game, mp.map("relaxed")),
        {0, 1}, [&](const oracle::RawPolicy& p) {
          best_lagrangian = std::max(
              best_lagrangian, problem.Lagrangian(oracle::ToDense(p, relaxed)));
        });
    CHECK(implementable <= best_lagrangian + 1e-9);
    const RirResult run = RunRelaxation(
        problem, BehavioralPolicy::Uniform(relaxed), 50,
        ProxMode::kBackwardInduction);
    if (run.lagrangian.back() >= best_lagrangian - 1e-9) {
      CHECK(implementable <= run.lagrangian.back() + 1e-9);
    }
  }
}

}  // namespace
}  // namespace phide
