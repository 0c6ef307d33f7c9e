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

#include "phide/counterfactual.h"

#include "phide/errors.h"

namespace phide {
namespace {

double CostAt(const HistoryCosts& costs, int stage, int history) {
  return stage < static_cast<int>(costs.size()) && !costs[stage].empty()
             ? costs[stage][history]
             : 0.;
}

int SampleIndex(std::span<const double> probs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0., 1.);
  double u = unit(rng);
  for (size_t a = 0; a + 1 < probs.size(); ++a) {
    if (u < probs[a]) return static_cast<int>(a);
    u -= probs[a];
  }
  return static_cast<int>(probs.size()) - 1;
}

}  // namespace

LabelActionTable ConditionalActionValues(const InfoIndex& map,
                                         const BehavioralPolicy& policy,
                                         std::span<const int> stages,
                                         double prefix_floor,
                                         const HistoryCosts& later,
                                         const HistoryCosts& own) {
  const ProductGame& game = map.game();
  const int num_stages = game.NumStages();
  std::vector<char> requested(num_stages, 0);
  for (int i : stages) requested[i] = 1;

  LabelActionTable numerator(num_stages);
  LabelActionTable denominator(num_stages);
  for (int i : stages) {
    const size_t size =
        static_cast<size_t>(map.NumLabels(i)) * game.NumActions(i);
    numerator[i].assign(size, 0.);
    denominator[i].assign(size, 0.);
  }

  std::vector<double> prefix(num_stages + 1);
  std::vector<double> suffix(num_stages);
  std::vector<double> later_cost(num_stages);
  for (int h = 0; h < game.NumHistories(); ++h) {
    prefix[0] = game.Nature(game.NatureOf(h)).weight;
    if (prefix[0] == 0.) continue;
    for (int j = 0; j < num_stages; ++j) {
      const double p = policy.Local(j, map.LabelId(j, h))[game.ActionAt(h, j)];
      prefix[j + 1] = prefix[j] * ((1. - prefix_floor) * p +
                                   prefix_floor / game.NumActions(j));
    }
    double product = 1.;
    double cost = 0.;
    for (int j = num_stages - 1; j >= 0; --j) {
      suffix[j] = product;
      later_cost[j] = cost;
      product *= policy.Local(j, map.LabelId(j, h))[game.ActionAt(h, j)];
      if (requested[j]) cost += CostAt(later, j, h);
    }
    for (int i : stages) {
      const double w = prefix[i] * suffix[i];
      const size_t slot =
          static_cast<size_t>(map.LabelId(i, h)) * game.NumActions(i) +
          game.ActionAt(h, i);
      const double r = game.Reward(h, game.PlayerOfStage(i));
      numerator[i][slot] += w * (r - CostAt(own, i, h) - later_cost[i]);
      denominator[i][slot] += w;
    }
  }

  for (int i : stages) {
    for (size_t slot = 0; slot < numerator[i].size(); ++slot) {
      if (!(denominator[i][slot] > 0.)) {
        throw ZeroReachLabel(
            "stage " + std::to_string(i) + " label " +
            std::to_string(slot / game.NumActions(i)) +
            " has no conditioning mass; raise the prefix floor");
      }
      numerator[i][slot] /= denominator[i][slot];
    }
  }
  return numerator;
}

SampledValues SampleActionValues(const InfoIndex& map,
                                 const BehavioralPolicy& policy,
                                 std::span<const int> stages,
                                 double exploration, const HistoryCosts& later,
                                 const HistoryCosts& own,
                                 std::mt19937_64& rng) {
  const ProductGame& game = map.game();
  const int num_stages = game.NumStages();

  std::vector<double> nature_weights;
  nature_weights.reserve(game.NumNatureStates());
  for (const NatureState& s : game.nature()) nature_weights.push_back(s.weight);
  History sampled{SampleIndex(nature_weights, rng),
                  std::vector<int>(num_stages, 0)};

  // The label of stage j depends only on the prefix, so the history can be
  // grown stage by stage through its index.
  std::vector<double> sampling(num_stages);
  std::vector<double> playing(num_stages);
  std::vector<int> labels(num_stages);
  std::vector<double> sigma;
  for (int j = 0; j < num_stages; ++j) {
    const int h = game.IndexOf(sampled);
    labels[j] = map.LabelId(j, h);
    std::span<const double> mu = policy.Local(j, labels[j]);
    sigma.assign(mu.size(), 0.);
    for (size_t a = 0; a < mu.size(); ++a) {
      sigma[a] = (1. - exploration) * mu[a] + exploration / mu.size();
    }
    const int a = SampleIndex(sigma, rng);
    sampled.actions[j] = a;
    sampling[j] = sigma[a];
    playing[j] = mu[a];
  }
  const int h = game.IndexOf(sampled);

  std::vector<char> requested(num_stages, 0);
  for (int i : stages) requested[i] = 1;
  std::vector<double> later_cost(num_stages);
  std::vector<double> ratio_after(num_stages);
  double cost = 0.;
  double ratio = 1.;
  for (int j = num_stages - 1; j >= 0; --j) {
    later_cost[j] = cost;
    ratio_after[j] = ratio;
    ratio *= playing[j] / sampling[j];
    if (requested[j]) cost += CostAt(later, j, h);
  }

  SampledValues out;
  out.history = h;
  double prefix_sampling = 1.;
  for (int j = 0; j < num_stages; ++j) {
    if (requested[j]) {
      SampledStageValue v;
      v.stage = j;
      v.label = labels[j];
      v.values.assign(game.NumActions(j), 0.);
      const double r = game.Reward(h, game.PlayerOfStage(j));
      v.values[sampled.actions[j]] =
          (r - CostAt(own, j, h) - later_cost[j]) * ratio_after[j] /
          (prefix_sampling * sampling[j]);
      out.stages.push_back(std::move(v));
    }
    prefix_sampling *= sampling[j];
  }
  return out;
}

}  // namespace phide
