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

#include "phide/learner_table.h"

#include <algorithm>

#include "phide/errors.h"

namespace phide {

SamplingMode ParseSamplingMode(const std::string& name) {
  if (name == "exact") return SamplingMode::kExact;
  if (name == "mc") return SamplingMode::kMonteCarlo;
  throw ConfigError("mode: unknown sampling mode '" + name + "'");
}

std::mt19937_64 MakeRng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32)};
  return std::mt19937_64(seq);
}

LearnerTable::LearnerTable(const InfoIndex& map, std::vector<int> stages,
                           const LearnerConfig& config,
                           std::mt19937_64& init_rng)
    : stages_(std::move(stages)) {
  const ProductGame& game = map.game();
  const int num_stages = game.NumStages();
  learners_.resize(num_stages);
  cumulative_reward_.resize(num_stages);
  realized_.resize(num_stages);
  std::gamma_distribution<double> unit_gamma(1., 1.);
  for (int i : stages_) {
    if (i < 0 || i >= num_stages) throw InvalidArgument("stage out of range");
    const int num_actions = game.NumActions(i);
    const double lr = config.learning_rate > 0.
                          ? config.learning_rate
                          : DefaultLearningRate(num_actions, config.horizon);
    learners_[i].reserve(map.NumLabels(i));
    for (int g = 0; g < map.NumLabels(i); ++g) {
      learners_[i].emplace_back(config.kind, num_actions, lr);
      if (config.randomize_init) {
        std::vector<double> x(num_actions);
        double total = 0.;
        for (double& v : x) {
          v = std::max(unit_gamma(init_rng), 1e-300);
          total += v;
        }
        for (double& v : x) v /= total;
        learners_[i].back().WarmStart(x);
      }
    }
    cumulative_reward_[i].assign(
        static_cast<size_t>(map.NumLabels(i)) * num_actions, 0.);
    realized_[i].assign(map.NumLabels(i), 0.);
  }
}

void LearnerTable::Decide(BehavioralPolicy& policy) const {
  for (int i : stages_) {
    StagePolicy& stage = policy.mutable_stage(i);
    for (size_t g = 0; g < learners_[i].size(); ++g) {
      learners_[i][g].Decide(stage.MutableLocal(static_cast<int>(g)));
    }
  }
}

void LearnerTable::Observe(int stage, int label, std::span<const double> reward,
                           std::span<const double> played) {
  RegretMinimizer& learner = learners_[stage][label];
  learner.Observe(reward);
  const int n = learner.num_actions();
  double value = 0.;
  for (int a = 0; a < n; ++a) {
    cumulative_reward_[stage][static_cast<size_t>(label) * n + a] += reward[a];
    value += played[a] * reward[a];
  }
  realized_[stage][label] += value;
}

double LearnerTable::LocalRegret(int stage, int label) const {
  if (iterations_ == 0) return 0.;
  const int n = learners_[stage][label].num_actions();
  auto begin =
      cumulative_reward_[stage].begin() + static_cast<ptrdiff_t>(label) * n;
  const double best = *std::max_element(begin, begin + n);
  return (best - realized_[stage][label]) / iterations_;
}

double LearnerTable::SumPositiveLocalRegret() const {
  double total = 0.;
  for (int i : stages_) {
    for (size_t g = 0; g < learners_[i].size(); ++g) {
      total += std::max(0., LocalRegret(i, static_cast<int>(g)));
    }
  }
  return total;
}

}  // namespace phide
