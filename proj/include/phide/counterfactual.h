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

#ifndef PHIDE_COUNTERFACTUAL_H_
#define PHIDE_COUNTERFACTUAL_H_

#include <random>
#include <span>
#include <vector>

#include "phide/info_map.h"
#include "phide/policy.h"

namespace phide {

// Per stage, a table indexed [label * num_actions + action]. Stages that were
// not requested are left empty.
using LabelActionTable = std::vector<std::vector<double>>;

// Per stage, a scalar per history index. Empty (or an empty stage) means
// zero.
using HistoryCosts = std::vector<std::vector<double>>;

// For each requested stage i and label g of `map`, and each action d:
//
//   E_{mu(i -> delta_d)}[ r_{P(i)}(h) - own_i(h)
//                         - sum_{j in stages, j > i} later_j(h) | X_i(h) = g ]
//
// `own_i(h)` may depend on h_i, which the expectation fixes to d.
// computed exactly by enumeration. The conditioning weights of stages before
// i use (1 - prefix_floor) * mu + prefix_floor * uniform so every label keeps
// positive mass; stages after i follow mu exactly. Throws ZeroReachLabel if a
// label still has no mass.
LabelActionTable ConditionalActionValues(const InfoIndex& map,
                                         const BehavioralPolicy& policy,
                                         std::span<const int> stages,
                                         double prefix_floor,
                                         const HistoryCosts& later = {},
                                         const HistoryCosts& own = {});

// One outcome-sampling estimate for a requested stage on the sampled history.
struct SampledStageValue {
  int stage = 0;
  int label = 0;
  // Importance-weighted counterfactual values; only the sampled action is
  // non-zero.
  std::vector<double> values;
};

struct SampledValues {
  int history = 0;
  std::vector<SampledStageValue> stages;
};

// Samples Nature from P and every stage from
// (1 - exploration) * mu + exploration * uniform, then returns, for each
// requested stage, an unbiased estimate of
//   sum_{h in g, h_i = d} P(h_nature) prod_{j > i} mu_j(h)[h_j]
//                         * (r_{P(i)}(h) - own_i(h) - later costs)
// at the sampled label g.
SampledValues SampleActionValues(const InfoIndex& map,
                                 const BehavioralPolicy& policy,
                                 std::span<const int> stages,
                                 double exploration, const HistoryCosts& later,
                                 const HistoryCosts& own,
                                 std::mt19937_64& rng);

}  // namespace phide

#endif  // PHIDE_COUNTERFACTUAL_H_
