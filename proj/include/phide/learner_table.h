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

#ifndef PHIDE_LEARNER_TABLE_H_
#define PHIDE_LEARNER_TABLE_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "phide/info_map.h"
#include "phide/policy.h"
#include "phide/regret.h"

namespace phide {

struct LearnerConfig {
  LearnerKind kind = LearnerKind::kRegretMatching;
  // FTRL step size; non-positive selects DefaultLearningRate(A, horizon).
  double learning_rate = 0.;
  std::optional<int> horizon;
  // Dirichlet(1) initial decisions instead of uniform.
  bool randomize_init = false;
};

enum class SamplingMode { kExact, kMonteCarlo };
SamplingMode ParseSamplingMode(const std::string& name);  // "exact" | "mc"

// A generator seeded from all 64 bits of `seed`.
std::mt19937_64 MakeRng(std::uint64_t seed);

// One row of a learning run's trace.
struct IterationRecord {
  int t = 0;
  // E_gamma[r_p] of the implementable output at iteration t.
  double expected_payoff = 0.;
  // lambda^t * E_{mu^t}[ sum_i ||mu^t_i - gamma_i||^2 ].
  double penalty_mass = 0.;
  double sum_positive_local_regret = 0.;
  double lambda = 0.;
};

// One regret minimizer per (stage, label) of `map` for the given stages, with
// the bookkeeping needed for local regrets R_loc(i, g).
class LearnerTable {
 public:
  // `init_rng` is only drawn from when config.randomize_init is set.
  LearnerTable(const InfoIndex& map, std::vector<int> stages,
               const LearnerConfig& config, std::mt19937_64& init_rng);

  const std::vector<int>& stages() const { return stages_; }
  int iterations() const { return iterations_; }
  const RegretMinimizer& learner(int stage, int label) const {
    return learners_[stage][label];
  }

  // Writes every learner's decision into the matching local vector.
  void Decide(BehavioralPolicy& policy) const;

  // Feeds `reward` to learner (stage, label), which played `played`.
  void Observe(int stage, int label, std::span<const double> reward,
               std::span<const double> played);
  // Closes an iteration; local regrets are averaged over closed iterations.
  void EndIteration() { ++iterations_; }

  // (1/T) (max_d sum_t reward_t[d] - sum_t <played_t, reward_t>).
  double LocalRegret(int stage, int label) const;
  double SumPositiveLocalRegret() const;

 private:
  std::vector<int> stages_;
  std::vector<std::vector<RegretMinimizer>> learners_;
  std::vector<std::vector<double>> cumulative_reward_;
  std::vector<std::vector<double>> realized_;
  int iterations_ = 0;
};

}  // namespace phide

#endif  // PHIDE_LEARNER_TABLE_H_
