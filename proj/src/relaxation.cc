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

#include "phide/relaxation.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "phide/errors.h"
#include "phide/evaluation.h"
#include "phide/projection.h"

namespace phide {

std::vector<double> ProjectOntoSimplex(std::span<const double> point) {
  if (point.empty()) throw InvalidArgument("cannot project an empty vector");
  std::vector<double> sorted(point.begin(), point.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.;
  double shift = 0.;
  for (size_t k = 0; k < sorted.size(); ++k) {
    prefix += sorted[k];
    const double candidate = (prefix - 1.) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.) shift = candidate;
  }
  std::vector<double> out(point.size());
  double total = 0.;
  for (size_t a = 0; a < point.size(); ++a) {
    out[a] = std::max(point[a] - shift, 0.);
    total += out[a];
  }
  for (double& v : out) v /= total;
  return out;
}

ProxMode ParseProxMode(const std::string& name) {
  if (name == "backward_induction") return ProxMode::kBackwardInduction;
  if (name == "coordinate_ascent") return ProxMode::kCoordinateAscent;
  throw ConfigError("prox_mode: unknown mode '" + name + "'");
}

RelaxationProblem::RelaxationProblem(const InfoIndex& coarse,
                                     const InfoIndex& relaxed, int player,
                                     double lambda)
    : RelaxationProblem(coarse, relaxed, player, lambda,
                        BehavioralPolicy::Uniform(relaxed)) {}

RelaxationProblem::RelaxationProblem(const InfoIndex& coarse,
                                     const InfoIndex& relaxed, int player,
                                     double lambda,
                                     const BehavioralPolicy& base)
    : coarse_(coarse), relaxed_(relaxed), player_(player), lambda_(lambda) {
  const ProductGame& game = relaxed.game();
  if (!(coarse.game() == game)) {
    throw InvalidArgument("coarse and relaxed maps describe different games");
  }
  if (!(lambda >= 0.) || !std::isfinite(lambda)) {
    throw InvalidArgument("lambda must be a finite non-negative number");
  }
  if (!IsFiner(relaxed, coarse)) {
    throw InvalidArgument("relaxed map '" + relaxed.name() +
                          "' is not finer than '" + coarse.name() + "'");
  }
  stages_ = game.StagesOf(player);
  base.Validate(relaxed);
  base_mass_ = Pushforward(relaxed, base);
  for (int h = 0; h < game.NumHistories(); ++h) {
    if (!(base_mass_[h] > 0.) && game.Nature(game.NatureOf(h)).weight > 0.) {
      throw InvalidArgument("base policy must have full support");
    }
  }
}

BehavioralPolicy RelaxationProblem::Project(const BehavioralPolicy& mu) const {
  return phide::Project(coarse_, base_mass_, KeyedPolicy{relaxed_, mu});
}

double RelaxationProblem::Distance(const BehavioralPolicy& mu,
                                   const BehavioralPolicy& gamma) const {
  return WeightedSqDistance(base_mass_, KeyedPolicy{relaxed_, mu},
                            KeyedPolicy{coarse_, gamma}, stages_);
}

double RelaxationProblem::Lagrangian(const BehavioralPolicy& mu) const {
  return ProximalObjective(mu, Project(mu));
}

double RelaxationProblem::ProximalObjective(
    const BehavioralPolicy& mu, const BehavioralPolicy& gamma) const {
  const double reward = ExpectedReward(relaxed_, mu, player_);
  if (lambda_ == 0.) return reward;
  return reward - lambda_ * Distance(mu, gamma);
}

BehavioralPolicy RelaxationProblem::Lift(const BehavioralPolicy& gamma) const {
  BehavioralPolicy mu = BehavioralPolicy::Uniform(relaxed_);
  for (int i = 0; i < relaxed_.NumStages(); ++i) {
    for (int g = 0; g < relaxed_.NumLabels(i); ++g) {
      const int c = coarse_.LabelId(i, relaxed_.Members(i)[g][0]);
      mu.mutable_stage(i).SetLocal(g, gamma.Local(i, c));
    }
  }
  return mu;
}

ProximalResult ProximalStep(const RelaxationProblem& problem,
                            const BehavioralPolicy& gamma, ProxMode mode,
                            const BehavioralPolicy* warm_start,
                            int max_sweeps, double tolerance) {
  const InfoIndex& relaxed = problem.relaxed();
  const InfoIndex& coarse = problem.coarse();
  const ProductGame& game = relaxed.game();
  if (mode == ProxMode::kBackwardInduction &&
      !HasPerfectRecall(relaxed, problem.player())) {
    throw PerfectRecallRequired("relaxed map '" + relaxed.name() +
                                "' lacks perfect recall for player " +
                                std::to_string(problem.player()));
  }
  gamma.Validate(coarse);
  ProximalResult result;
  result.policy = warm_start != nullptr ? *warm_start : problem.Lift(gamma);
  result.policy.Validate(relaxed);
  BehavioralPolicy& mu = result.policy;

  std::vector<int> order = problem.stages();
  if (mode == ProxMode::kBackwardInduction) {
    std::reverse(order.begin(), order.end());
  }
  const double lambda = problem.lambda();
  const std::vector<double>& base_mass = problem.base_mass();
  std::vector<double> linear;
  std::vector<double> point;
  for (result.sweeps = 1; result.sweeps <= max_sweeps; ++result.sweeps) {
    double improvement = 0.;
    for (int i : order) {
      const int n = game.NumActions(i);
      for (int g = 0; g < relaxed.NumLabels(i); ++g) {
        const std::vector<int>& members = relaxed.Members(i)[g];
        linear.assign(n, 0.);
        double weight = 0.;
        for (int h : members) {
          weight += base_mass[h];
          double reach = game.Nature(game.NatureOf(h)).weight;
          for (int j = 0; j < game.NumStages() && reach != 0.; ++j) {
            if (j == i) continue;
            reach *= mu.Local(j, relaxed.LabelId(j, h))[game.ActionAt(h, j)];
          }
          linear[game.ActionAt(h, i)] += reach * game.Reward(h, problem.player());
        }
        std::span<const double> y =
            gamma.Local(i, coarse.LabelId(i, members[0]));
        std::span<const double> x = mu.Local(i, g);
        std::vector<double> next;
        const double curvature = lambda * weight;
        if (curvature > 0.) {
          point.resize(n);
          for (int a = 0; a < n; ++a) {
            point[a] = y[a] + linear[a] / (2. * curvature);
          }
          next = ProjectOntoSimplex(point);
        } else {
          next.assign(n, 0.);
          next[std::max_element(linear.begin(), linear.end()) -
               linear.begin()] = 1.;
        }
        double gain = 0.;
        for (int a = 0; a < n; ++a) gain += linear[a] * (next[a] - x[a]);
        gain -= curvature * (SquaredDistance(next, y) - SquaredDistance(x, y));
        if (gain > 0.) {
          improvement += gain;
          mu.mutable_stage(i).SetLocal(g, next);
        }
      }
    }
    if (improvement < tolerance) {
      result.converged = true;
      break;
    }
  }
  if (result.sweeps > max_sweeps) result.sweeps = max_sweeps;
  return result;
}

RirResult RunRelaxation(const RelaxationProblem& problem,
                        const BehavioralPolicy& initial, int rounds,
                        ProxMode mode) {
  if (rounds < 0) throw InvalidArgument("rounds must be non-negative");
  RirResult result;
  result.mu = initial;
  result.mu.Validate(problem.relaxed());
  result.gamma = problem.Project(result.mu);
  result.lagrangian.push_back(problem.Lagrangian(result.mu));
  for (int k = 0; k < rounds; ++k) {
    ProximalResult step =
        ProximalStep(problem, result.gamma, mode, &result.mu);
    result.all_converged = result.all_converged && step.converged;
    result.mu = std::move(step.policy);
    result.gamma = problem.Project(result.mu);
    result.lagrangian.push_back(problem.Lagrangian(result.mu));
  }
  return result;
}

}  // namespace phide
