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

#include "phide/regret.h"

#include <algorithm>
#include <cmath>

#include "phide/errors.h"

namespace phide {

LearnerKind ParseLearnerKind(const std::string& name) {
  if (name == "regret_matching") return LearnerKind::kRegretMatching;
  if (name == "regret_matching_plus") return LearnerKind::kRegretMatchingPlus;
  if (name == "ftrl_entropic") return LearnerKind::kFtrlEntropic;
  throw ConfigError("learner: unknown kind '" + name + "'");
}

std::string LearnerKindName(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kRegretMatching:
      return "regret_matching";
    case LearnerKind::kRegretMatchingPlus:
      return "regret_matching_plus";
    case LearnerKind::kFtrlEntropic:
      return "ftrl_entropic";
  }
  return "unknown";
}

double DefaultLearningRate(int num_actions, std::optional<int> horizon) {
  if (!horizon.has_value() || *horizon <= 0 || num_actions < 2) return 0.1;
  return std::sqrt(std::log(static_cast<double>(num_actions)) / *horizon);
}

RegretMinimizer::RegretMinimizer(LearnerKind kind, int num_actions,
                                 double learning_rate)
    : kind_(kind),
      learning_rate_(learning_rate),
      cumulative_(num_actions, 0.) {
  if (num_actions < 1) throw InvalidArgument("learner needs an action");
  if (kind == LearnerKind::kFtrlEntropic && !(learning_rate > 0.)) {
    throw InvalidArgument("FTRL learning rate must be positive");
  }
}

std::vector<double> RegretMinimizer::Decide() const {
  std::vector<double> out(cumulative_.size());
  Decide(out);
  return out;
}

void RegretMinimizer::Decide(std::span<double> out) const {
  const size_t n = cumulative_.size();
  if (kind_ == LearnerKind::kFtrlEntropic) {
    const double top =
        *std::max_element(cumulative_.begin(), cumulative_.end());
    double total = 0.;
    for (size_t a = 0; a < n; ++a) {
      out[a] = std::exp(learning_rate_ * (cumulative_[a] - top));
      total += out[a];
    }
    for (size_t a = 0; a < n; ++a) out[a] /= total;
    return;
  }
  double positive = 0.;
  for (double r : cumulative_) positive += r > 0. ? r : 0.;
  if (positive > 0.) {
    for (size_t a = 0; a < n; ++a) {
      out[a] = cumulative_[a] > 0. ? cumulative_[a] / positive : 0.;
    }
  } else {
    for (size_t a = 0; a < n; ++a) out[a] = 1. / n;
  }
}

void RegretMinimizer::Observe(std::span<const double> reward) {
  if (reward.size() != cumulative_.size()) {
    throw InvalidArgument("reward vector has " + std::to_string(reward.size()) +
                          " entries for " +
                          std::to_string(cumulative_.size()) + " actions");
  }
  for (double r : reward) {
    if (!std::isfinite(r)) throw InvalidArgument("reward is not finite");
  }
  if (kind_ == LearnerKind::kFtrlEntropic) {
    for (size_t a = 0; a < reward.size(); ++a) cumulative_[a] += reward[a];
    return;
  }
  std::vector<double> x(cumulative_.size());
  Decide(x);
  double value = 0.;
  for (size_t a = 0; a < x.size(); ++a) value += x[a] * reward[a];
  for (size_t a = 0; a < x.size(); ++a) {
    cumulative_[a] += reward[a] - value;
    if (kind_ == LearnerKind::kRegretMatchingPlus && cumulative_[a] < 0.) {
      cumulative_[a] = 0.;
    }
  }
}

void RegretMinimizer::WarmStart(std::span<const double> distribution) {
  if (distribution.size() != cumulative_.size()) {
    throw InvalidArgument("warm start has the wrong size");
  }
  for (size_t a = 0; a < distribution.size(); ++a) {
    if (!(distribution[a] > 0.)) {
      throw InvalidArgument("warm start needs strictly positive entries");
    }
    cumulative_[a] = kind_ == LearnerKind::kFtrlEntropic
                         ? std::log(distribution[a]) / learning_rate_
                         : distribution[a];
  }
}

double ExternalRegret(const std::vector<std::vector<double>>& decisions,
                      const std::vector<std::vector<double>>& rewards) {
  if (decisions.size() != rewards.size()) {
    throw InvalidArgument("decisions and rewards are not aligned");
  }
  if (decisions.empty()) return 0.;
  std::vector<double> per_action(rewards.front().size(), 0.);
  double realized = 0.;
  for (size_t t = 0; t < rewards.size(); ++t) {
    for (size_t a = 0; a < per_action.size(); ++a) {
      per_action[a] += rewards[t][a];
      realized += decisions[t][a] * rewards[t][a];
    }
  }
  return *std::max_element(per_action.begin(), per_action.end()) - realized;
}

}  // namespace phide
