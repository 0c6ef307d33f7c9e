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

#include "phide/projection.h"

#include <cmath>

#include "phide/errors.h"
#include "phide/evaluation.h"

namespace phide {

bool IsImplementable(const InfoIndex& map, const KeyedPolicy& policy,
                     double tolerance) {
  const ProductGame& game = map.game();
  for (int i = 0; i < game.NumStages(); ++i) {
    for (const std::vector<int>& members : map.Members(i)) {
      std::span<const double> first = policy.At(i, members.front());
      for (int h : members) {
        std::span<const double> local = policy.At(i, h);
        for (size_t a = 0; a < local.size(); ++a) {
          if (std::abs(local[a] - first[a]) > tolerance) return false;
        }
      }
    }
  }
  return true;
}

bool IsFiner(const InfoIndex& fine, const InfoIndex& coarse) {
  const ProductGame& game = fine.game();
  for (int i = 0; i < game.NumStages(); ++i) {
    for (const std::vector<int>& members : fine.Members(i)) {
      const int c = coarse.LabelId(i, members.front());
      for (int h : members) {
        if (coarse.LabelId(i, h) != c) return false;
      }
    }
  }
  return true;
}

bool HasPerfectRecall(const InfoIndex& map, int player) {
  const ProductGame& game = map.game();
  const std::vector<int> stages = game.StagesOf(player);
  for (size_t jj = 0; jj < stages.size(); ++jj) {
    const int j = stages[jj];
    for (const std::vector<int>& members : map.Members(j)) {
      const int h0 = members.front();
      for (size_t ii = 0; ii < jj; ++ii) {
        const int i = stages[ii];
        const int label = map.LabelId(i, h0);
        const int action = game.ActionAt(h0, i);
        for (int h : members) {
          if (map.LabelId(i, h) != label || game.ActionAt(h, i) != action) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

BehavioralPolicy Project(const InfoIndex& coarse, const KeyedPolicy& base,
                         const KeyedPolicy& policy) {
  return Project(coarse, Pushforward(base.index, base.policy), policy);
}

BehavioralPolicy Project(const InfoIndex& coarse,
                         std::span<const double> base_mass,
                         const KeyedPolicy& policy) {
  const ProductGame& game = coarse.game();
  std::vector<StagePolicy> stages;
  stages.reserve(game.NumStages());
  std::vector<double> sum;
  for (int i = 0; i < game.NumStages(); ++i) {
    const int num_actions = game.NumActions(i);
    StagePolicy gamma(coarse.NumLabels(i), num_actions);
    sum.assign(num_actions, 0.);
    for (int c = 0; c < coarse.NumLabels(i); ++c) {
      const std::vector<int>& members = coarse.Members(i)[c];
      const int source = policy.index.LabelId(i, members.front());
      bool single_source = true;
      for (int h : members) {
        if (policy.index.LabelId(i, h) != source) {
          single_source = false;
          break;
        }
      }
      std::span<double> out = gamma.MutableLocal(c);
      if (single_source) {
        std::span<const double> local = policy.policy.Local(i, source);
        std::copy(local.begin(), local.end(), out.begin());
        continue;
      }
      std::fill(sum.begin(), sum.end(), 0.);
      double mass = 0.;
      for (int h : members) {
        const double q = base_mass[h];
        if (q == 0.) continue;
        mass += q;
        std::span<const double> local = policy.At(i, h);
        for (int a = 0; a < num_actions; ++a) sum[a] += q * local[a];
      }
      if (mass <= 0.) {
        throw ZeroReachLabel("stage " + std::to_string(i) + " label " +
                             std::to_string(c) +
                             " has no mass under the projector base");
      }
      for (int a = 0; a < num_actions; ++a) out[a] = sum[a] / mass;
    }
    stages.push_back(std::move(gamma));
  }
  return BehavioralPolicy(std::move(stages));
}

double SquaredDistance(std::span<const double> x, std::span<const double> y) {
  double d = 0.;
  for (size_t a = 0; a < x.size(); ++a) {
    const double diff = x[a] - y[a];
    d += diff * diff;
  }
  return d;
}

double WeightedSqDistance(const KeyedPolicy& base, const KeyedPolicy& a,
                          const KeyedPolicy& b, std::span<const int> stages) {
  return WeightedSqDistance(Pushforward(base.index, base.policy), a, b,
                            stages);
}

double WeightedSqDistance(std::span<const double> base_mass,
                          const KeyedPolicy& a, const KeyedPolicy& b,
                          std::span<const int> stages) {
  double total = 0.;
  for (int i : stages) {
    for (size_t h = 0; h < base_mass.size(); ++h) {
      if (base_mass[h] == 0.) continue;
      total += base_mass[h] * SquaredDistance(a.At(i, static_cast<int>(h)),
                                              b.At(i, static_cast<int>(h)));
    }
  }
  return total;
}

}  // namespace phide
