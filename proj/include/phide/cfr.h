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

#ifndef PHIDE_CFR_H_
#define PHIDE_CFR_H_

#include <cstdint>
#include <random>
#include <vector>

#include "phide/counterfactual.h"
#include "phide/info_map.h"
#include "phide/learner_table.h"
#include "phide/policy.h"

namespace phide {

struct CfrConfig {
  LearnerConfig learner;
  SamplingMode mode = SamplingMode::kExact;
  // Uniform mixing of the sampling policy in Monte Carlo mode.
  double exploration = 0.6;
  // Uniform mixing of the conditioning weights of earlier stages.
  double prefix_floor = 1e-6;
  std::uint64_t seed = 0;
};

// Counterfactual rewards of label `label` at stage `stage` under `policy`:
// one entry per action, E_{mu(i -> delta_d)}[r_{P(i)} | X_i = g].
std::vector<double> CounterfactualRewards(const InfoIndex& map,
                                          const BehavioralPolicy& policy,
                                          int stage, int label,
                                          double prefix_floor = 1e-6);

// Counterfactual regret minimization on a product-form game: one local
// learner per (stage, label) of `map`, each stage fed with the rewards of the
// player who acts there.
class CfrSolver {
 public:
  // `map` must outlive the solver.
  CfrSolver(const InfoIndex& map, const CfrConfig& config);

  // Runs one iteration and returns the iterate mu^t it played.
  const BehavioralPolicy& Iterate();

  int iteration() const { return learners_.iterations(); }
  const BehavioralPolicy& current_policy() const { return current_; }
  // Per label, the average of the iterates weighted by the label's
  // (floored) reach mass.
  BehavioralPolicy AveragePolicy() const;
  const LearnerTable& learners() const { return learners_; }
  // Rows carry E_{mu^t}[r_0], zero penalty and zero lambda.
  const std::vector<IterationRecord>& trace() const { return trace_; }

 private:
  const InfoIndex& map_;
  CfrConfig config_;
  std::mt19937_64 rng_;
  std::vector<int> stages_;
  LearnerTable learners_;
  BehavioralPolicy current_;
  std::vector<std::vector<double>> average_numerator_;
  std::vector<std::vector<double>> average_mass_;
  std::vector<IterationRecord> trace_;
};

// Reach mass of every (stage, label) of `map` under `policy`:
// sum over histories carrying the label of Q_policy(h).
std::vector<std::vector<double>> LabelMasses(const InfoIndex& map,
                                             const BehavioralPolicy& policy);

}  // namespace phide

#endif  // PHIDE_CFR_H_
