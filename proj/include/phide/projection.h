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

#ifndef PHIDE_PROJECTION_H_
#define PHIDE_PROJECTION_H_

#include <span>
#include <vector>

#include "phide/info_map.h"
#include "phide/policy.h"

namespace phide {

// A policy together with the map whose labels key it.
struct KeyedPolicy {
  const InfoIndex& index;
  const BehavioralPolicy& policy;

  // mu_i(h): the local vector played at `history`.
  std::span<const double> At(int stage, int history) const {
    return policy.Local(stage, index.LabelId(stage, history));
  }
};

// Non-anticipativity: histories sharing a label of `map` at stage i receive
// the same local vector (entries within `tolerance`).
bool IsImplementable(const InfoIndex& map, const KeyedPolicy& policy,
                     double tolerance = 0.);

// True iff `fine` separates every pair of histories that `coarse` separates,
// at every stage.
bool IsFiner(const InfoIndex& fine, const InfoIndex& coarse);

// Both recall conditions for `player`: for stages i < j of the player, a
// stage-j label determines the stage-i label and the stage-i action.
bool HasPerfectRecall(const InfoIndex& map, int player);

// Proj_{base}(policy): for every stage and label c of `coarse`, the
// Q_base-weighted average of policy's local vectors over histories labelled c.
// A label covering a single label of the policy's map copies that vector
// exactly. Throws ZeroReachLabel when some label has no Q_base mass.
BehavioralPolicy Project(const InfoIndex& coarse, const KeyedPolicy& base,
                         const KeyedPolicy& policy);

// Per-history masses variant, for callers that already hold Q_base.
BehavioralPolicy Project(const InfoIndex& coarse,
                         std::span<const double> base_mass,
                         const KeyedPolicy& policy);

// sum over `stages` of E_base[ ||a_i(h) - b_i(h)||^2 ].
double WeightedSqDistance(const KeyedPolicy& base, const KeyedPolicy& a,
                          const KeyedPolicy& b, std::span<const int> stages);
double WeightedSqDistance(std::span<const double> base_mass,
                          const KeyedPolicy& a, const KeyedPolicy& b,
                          std::span<const int> stages);

double SquaredDistance(std::span<const double> x, std::span<const double> y);

}  // namespace phide

#endif  // PHIDE_PROJECTION_H_
