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

#ifndef PHIDE_REGRET_H_
#define PHIDE_REGRET_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phide {

enum class LearnerKind { kRegretMatching, kRegretMatchingPlus, kFtrlEntropic };

// "regret_matching" | "regret_matching_plus" | "ftrl_entropic".
LearnerKind ParseLearnerKind(const std::string& name);
std::string LearnerKindName(LearnerKind kind);

// sqrt(ln A / T) when the horizon is known, 0.1 otherwise.
double DefaultLearningRate(int num_actions, std::optional<int> horizon);

// A local no-regret learner over a finite action set, driven through
// Decide() and Observe(reward vector).
class RegretMinimizer {
 public:
  RegretMinimizer(LearnerKind kind, int num_actions,
                  double learning_rate = 0.1);

  LearnerKind kind() const { return kind_; }
  int num_actions() const { return static_cast<int>(cumulative_.size()); }
  double learning_rate() const { return learning_rate_; }
  // Cumulative regrets (regret matching) or cumulative rewards (FTRL).
  const std::vector<double>& cumulative() const { return cumulative_; }

  // Regret matching: normalized positive part of the cumulative regrets,
  // uniform when none is positive. FTRL: softmax(eta * cumulative rewards).
  std::vector<double> Decide() const;
  void Decide(std::span<double> out) const;

  // Throws InvalidArgument on a size mismatch or a non-finite entry.
  void Observe(std::span<const double> reward);

  // Sets the state so that the next Decide() returns `distribution`
  // (strictly positive entries).
  void WarmStart(std::span<const double> distribution);

 private:
  LearnerKind kind_;
  double learning_rate_;
  std::vector<double> cumulative_;
};

// max over actions of the cumulative reward minus the realized cumulative
// <x_t, reward_t>. Empty histories have zero regret.
double ExternalRegret(const std::vector<std::vector<double>>& decisions,
                      const std::vector<std::vector<double>>& rewards);

}  // namespace phide

#endif  // PHIDE_REGRET_H_
