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

#include "phide/cfr.h"

#include <numeric>

#include "phide/errors.h"
#include "phide/evaluation.h"

namespace phide {
namespace {

std::vector<int> AllStages(const ProductGame& game) {
  std::vector<int> stages(game.NumStages());
  std::iota(stages.begin(), stages.end(), 0);
  return stages;
}

}  // namespace

std::vector<double> CounterfactualRewards(const InfoIndex& map,
                                          const BehavioralPolicy& policy,
                                          int stage, int label,
                                          double prefix_floor) {
  const ProductGame& game = map.game();
  if (stage < 0 || stage >= game.NumStages()) {
    throw InvalidArgument("stage out of range");
  }
  if (label < 0 || label >= map.NumLabels(stage)) {
    throw InvalidArgument("label out of range");
  }
  const int stages[] = {stage};
  LabelActionTable table =
      ConditionalActionValues(map, policy, stages, prefix_floor);
  const int n = game.NumActions(stage);
  auto begin = table[stage].begin() + static_cast<ptrdiff_t>(label) * n;
  return std::vector<double>(begin, begin + n);
}

std::vector<std::vector<double>> LabelMasses(const InfoIndex& map,
                                             const BehavioralPolicy& policy) {
  const ProductGame& game = map.game();
  const std::vector<double> q = Pushforward(map, policy);
  std::vector<std::vector<double>> mass(game.NumStages());
  for (int i = 0; i < game.NumStages(); ++i) {
    mass[i].assign(map.NumLabels(i), 0.);
    for (int h = 0; h < game.NumHistories(); ++h) {
      mass[i][map.LabelId(i, h)] += q[h];
    }
  }
  return mass;
}

CfrSolver::CfrSolver(const InfoIndex& map, const CfrConfig& config)
    : map_(map),
      config_(config),
      rng_(MakeRng(config.seed)),
      stages_(AllStages(map.game())),
      learners_(map, stages_, config.learner, rng_),
      current_(BehavioralPolicy::Uniform(map)) {
  if (!(config.exploration > 0.) || config.exploration > 1.) {
    throw ConfigError("exploration must lie in (0, 1]");
  }
  if (!(config.prefix_floor > 0.) || config.prefix_floor >= 1.) {
    throw ConfigError("prefix floor must lie in (0, 1)");
  }
  const ProductGame& game = map.game();
  average_numerator_.resize(game.NumStages());
  average_mass_.resize(game.NumStages());
  for (int i = 0; i < game.NumStages(); ++i) {
    average_numerator_[i].assign(
        static_cast<size_t>(map.NumLabels(i)) * game.NumActions(i), 0.);
    average_mass_[i].assign(map.NumLabels(i), 0.);
  }
}

const BehavioralPolicy& CfrSolver::Iterate() {
  const ProductGame& game = map_.game();
  learners_.Decide(current_);

  if (config_.mode == SamplingMode::kExact) {
    const LabelActionTable values = ConditionalActionValues(
        map_, current_, stages_, config_.prefix_floor);
    for (int i : stages_) {
      const int n = game.NumActions(i);
      for (int g = 0; g < map_.NumLabels(i); ++g) {
        std::span<const double> reward(
            values[i].data() + static_cast<size_t>(g) * n, n);
        learners_.Observe(i, g, reward, current_.Local(i, g));
      }
    }
  } else {
    const SampledValues sample = SampleActionValues(
        map_, current_, stages_, config_.exploration, {}, {}, rng_);
    for (const SampledStageValue& v : sample.stages) {
      learners_.Observe(v.stage, v.label, v.values,
                        current_.Local(v.stage, v.label));
    }
  }
  learners_.EndIteration();

  const auto mass =
      LabelMasses(map_, MixWithUniform(current_, config_.prefix_floor));
  for (int i : stages_) {
    const int n = game.NumActions(i);
    for (int g = 0; g < map_.NumLabels(i); ++g) {
      std::span<const double> x = current_.Local(i, g);
      for (int a = 0; a < n; ++a) {
        average_numerator_[i][static_cast<size_t>(g) * n + a] +=
            mass[i][g] * x[a];
      }
      average_mass_[i][g] += mass[i][g];
    }
  }

  IterationRecord record;
  record.t = learners_.iterations();
  record.expected_payoff = ExpectedReward(map_, current_, 0);
  record.sum_positive_local_regret = learners_.SumPositiveLocalRegret();
  trace_.push_back(record);
  return current_;
}

BehavioralPolicy CfrSolver::AveragePolicy() const {
  BehavioralPolicy average = BehavioralPolicy::Uniform(map_);
  const ProductGame& game = map_.game();
  if (learners_.iterations() == 0) return average;
  for (int i : stages_) {
    const int n = game.NumActions(i);
    for (int g = 0; g < map_.NumLabels(i); ++g) {
      if (!(average_mass_[i][g] > 0.)) continue;
      std::span<double> x = average.mutable_stage(i).MutableLocal(g);
      for (int a = 0; a < n; ++a) {
        x[a] = average_numerator_[i][static_cast<size_t>(g) * n + a] /
               average_mass_[i][g];
      }
    }
  }
  return average;
}

}  // namespace phide
