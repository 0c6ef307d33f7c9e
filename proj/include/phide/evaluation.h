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

#ifndef PHIDE_EVALUATION_H_
#define PHIDE_EVALUATION_H_

#include <functional>
#include <span>
#include <vector>

#include "phide/game.h"
#include "phide/info_map.h"
#include "phide/policy.h"

namespace phide {

// Legal histories in lexicographic order of (nature, a_0, ..., a_{L-1}).
// Rejects maps whose stage-i label depends on components at stages >= i.
std::vector<History> EnumerateReachable(const ProductGame& game,
                                        const InformationMap& map);

// For each Nature state, the unique history h with (omega, mu(h)) = h under
// the deterministic `profile`. Works on unvalidated indices and throws
// WellPosednessViolation when a state has zero or several fixed points.
std::vector<History> CheckWellPosed(const InfoIndex& index,
                                    const BehavioralPolicy& profile);

// Q_mu(h) = P(h_nature) * prod_i mu_i(X_i(h))[h_i], indexed by history.
std::vector<double> Pushforward(const InfoIndex& index,
                                const BehavioralPolicy& policy);

// E_mu[f] with f given per history index.
double Expectation(const InfoIndex& index, const BehavioralPolicy& policy,
                   std::span<const double> values);
double Expectation(const InfoIndex& index, const BehavioralPolicy& policy,
                   const std::function<double(const History&)>& f);
double ExpectedReward(const InfoIndex& index, const BehavioralPolicy& policy,
                      int player);

// Per-history values r_p(h) for one player.
std::vector<double> RewardsOf(const ProductGame& game, int player);

// Per (label, action) costs for each stage; an empty stage costs nothing.
using StageCosts = std::vector<std::vector<double>>;

struct DeterministicOptimum {
  double value = 0.;
  // Deterministic on `player`'s stages (action 0 on labels that are never
  // reached); other stages copied from the fixed profile.
  BehavioralPolicy policy;
  long long nodes = 0;
};

// Maximizes E_mu[values(h) - sum_{i in I_p} costs_i(X_i(h), h_i)] over
// deterministic policies of `player` keyed by `index`, the other stages
// following `profile`. Exact branch and bound: the bound relaxes every
// undecided label to a per-history choice. Throws EnumerationTooLarge once
// more than `max_nodes` bounds have been evaluated.
DeterministicOptimum MaximizeDeterministic(const InfoIndex& index, int player,
                                           const BehavioralPolicy& profile,
                                           std::span<const double> values,
                                           const StageCosts& costs,
                                           long long max_nodes);

// Same objective by reverse-stage dynamic programming. Requires every stage
// to belong to one player and the map to have perfect recall for it
// (PerfectRecallRequired otherwise).
DeterministicOptimum BackwardInductionOptimum(const InfoIndex& index,
                                              std::span<const double> values,
                                              const StageCosts& costs);

inline constexpr long long kDefaultMaxSearchNodes = 5'000'000;

// max over deterministic implementable mu_p of E_{mu_p, mu_-p}[r_p]. This is
// the best-response value over all of Lambda_p since the objective is linear
// in each component.
DeterministicOptimum BestResponse(const InfoIndex& index, int player,
                                  const BehavioralPolicy& profile,
                                  long long max_nodes = kDefaultMaxSearchNodes);
double BestResponseValue(const InfoIndex& index, int player,
                         const BehavioralPolicy& profile,
                         long long max_nodes = kDefaultMaxSearchNodes);

}  // namespace phide

#endif  // PHIDE_EVALUATION_H_
