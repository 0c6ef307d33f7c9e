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

// Brute-force reference computations for tests. They walk histories as
// (nature, actions) tuples, read labels through InformationMap::LabelOf and
// never use the library's evaluation, projection or search code.

#ifndef PHIDE_TESTS_ORACLES_H_
#define PHIDE_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "phide/game.h"
#include "phide/info_map.h"
#include "phide/policy.h"

namespace phide::oracle {

// Local vector played at stage i of history h.
using LocalFn = std::function<std::vector<double>(int, const History&)>;

inline std::vector<History> AllHistories(const ProductGame& game) {
  std::vector<History> out;
  History h{0, std::vector<int>(game.NumStages(), 0)};
  std::function<void(int)> fill = [&](int stage) {
    if (stage == game.NumStages()) {
      out.push_back(h);
      return;
    }
    for (int a = 0; a < game.NumActions(stage); ++a) {
      h.actions[stage] = a;
      fill(stage + 1);
    }
  };
  for (int w = 0; w < game.NumNatureStates(); ++w) {
    h.nature = w;
    fill(0);
  }
  return out;
}

inline Label RawLabel(const ProductGame& game, const InformationMap& map,
                      const History& h, int stage) {
  return map.LabelOf(game, game.IndexOf(h), stage);
}

// A behavioural policy stored by raw label.
struct RawPolicy {
  const ProductGame* game;
  const InformationMap* map;
  std::vector<std::map<Label, std::vector<double>>> locals;

  std::vector<double> At(int stage, const History& h) const {
    return locals[stage].at(RawLabel(*game, *map, h, stage));
  }
  LocalFn Fn() const {
    return [this](int stage, const History& h) { return At(stage, h); };
  }
};

// Raw labels met at each stage, in first-appearance order.
inline std::vector<std::vector<Label>> RawLabels(const ProductGame& game,
                                                 const InformationMap& map) {
  std::vector<std::vector<Label>> labels(game.NumStages());
  for (const History& h : AllHistories(game)) {
    for (int i = 0; i < game.NumStages(); ++i) {
      const Label l = RawLabel(game, map, h, i);
      if (std::find(labels[i].begin(), labels[i].end(), l) == labels[i].end()) {
        labels[i].push_back(l);
      }
    }
  }
  return labels;
}

inline RawPolicy UniformRaw(const ProductGame& game, const InformationMap& map) {
  RawPolicy p{&game, &map, std::vector<std::map<Label, std::vector<double>>>(
                               game.NumStages())};
  const auto labels = RawLabels(game, map);
  for (int i = 0; i < game.NumStages(); ++i) {
    for (Label l : labels[i]) {
      p.locals[i][l] =
          std::vector<double>(game.NumActions(i), 1. / game.NumActions(i));
    }
  }
  return p;
}

inline RawPolicy RandomRaw(const ProductGame& game, const InformationMap& map,
                           std::mt19937_64& rng) {
  RawPolicy p = UniformRaw(game, map);
  std::gamma_distribution<double> gamma(1., 1.);
  for (auto& stage : p.locals) {
    for (auto& [label, x] : stage) {
      double total = 0.;
      for (double& v : x) total += (v = gamma(rng) + 1e-3);
      for (double& v : x) v /= total;
    }
  }
  return p;
}

// Converts a raw policy into the library's dense representation.
inline BehavioralPolicy ToDense(const RawPolicy& raw, const InfoIndex& index) {
  BehavioralPolicy out = BehavioralPolicy::Uniform(index);
  for (int i = 0; i < index.NumStages(); ++i) {
    for (int g = 0; g < index.NumLabels(i); ++g) {
      out.mutable_stage(i).SetLocal(g, raw.locals[i].at(index.RawLabel(i, g)));
    }
  }
  return out;
}

inline double Probability(const ProductGame& game, const LocalFn& mu,
                          const History& h) {
  double p = game.Nature(h.nature).weight;
  for (int i = 0; i < game.NumStages(); ++i) p *= mu(i, h)[h.actions[i]];
  return p;
}

inline double Expectation(const ProductGame& game, const LocalFn& mu,
                          const std::function<double(const History&)>& f) {
  double total = 0.;
  for (const History& h : AllHistories(game)) {
    const double p = Probability(game, mu, h);
    if (p != 0.) total += p * f(h);
  }
  return total;
}

inline double ExpectedReward(const ProductGame& game, const LocalFn& mu,
                             int player = 0) {
  return Expectation(game, mu, [&](const History& h) {
    return game.Reward(game.IndexOf(h), player);
  });
}

// E_{mu(i -> delta_d)}[ f(h) | X_i(h) = label ], with stages before i mixed
// with `floor` uniform mass and later stages exact.
inline double Conditional(const ProductGame& game, const InformationMap& map,
                          const LocalFn& mu, int stage, Label label, int d,
                          double floor,
                          const std::function<double(const History&)>& f) {
  double num = 0.;
  double den = 0.;
  for (const History& h : AllHistories(game)) {
    if (h.actions[stage] != d || RawLabel(game, map, h, stage) != label) {
      continue;
    }
    double w = game.Nature(h.nature).weight;
    for (int j = 0; j < game.NumStages(); ++j) {
      const double p = mu(j, h)[h.actions[j]];
      if (j < stage) {
        w *= (1. - floor) * p + floor / game.NumActions(j);
      } else if (j > stage) {
        w *= p;
      }
    }
    num += w * f(h);
    den += w;
  }
  return num / den;
}

// Every deterministic policy over the raw labels of `map` for the stages in
// `stages` (other stages keep `base`), passed to `visit`.
inline void ForEachDeterministic(const ProductGame& game,
                                 const InformationMap& map,
                                 const RawPolicy& base,
                                 const std::vector<int>& stages,
                                 const std::function<void(const RawPolicy&)>& visit) {
  const auto labels = RawLabels(game, map);
  std::vector<std::pair<int, Label>> slots;
  for (int i : stages) {
    for (Label l : labels[i]) slots.push_back({i, l});
  }
  RawPolicy current = base;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == slots.size()) {
      visit(current);
      return;
    }
    const auto [i, l] = slots[k];
    for (int a = 0; a < game.NumActions(i); ++a) {
      std::vector<double> x(game.NumActions(i), 0.);
      x[a] = 1.;
      current.locals[i][l] = x;
      rec(k + 1);
    }
  };
  rec(0);
}

// Number of deterministic policies over the labels of `stages` (saturating).
inline double CountDeterministic(const ProductGame& game,
                                 const InformationMap& map,
                                 const std::vector<int>& stages) {
  const auto labels = RawLabels(game, map);
  double count = 1.;
  for (int i : stages) {
    count *= std::pow(static_cast<double>(game.NumActions(i)),
                      static_cast<double>(labels[i].size()));
  }
  return count;
}

// max over deterministic policies of `player` of E[r_player].
inline double BestResponseValue(const ProductGame& game,
                                const InformationMap& map,
                                const RawPolicy& base, int player) {
  double best = -std::numeric_limits<double>::infinity();
  ForEachDeterministic(game, map, base, game.StagesOf(player),
                       [&](const RawPolicy& p) {
                         best = std::max(best,
                                         ExpectedReward(game, p.Fn(), player));
                       });
  return best;
}

// Q_base-weighted average of mu over the coarse label of each history.
inline std::vector<double> ProjectAt(const ProductGame& game,
                                     const InformationMap& coarse,
                                     const LocalFn& base, const LocalFn& mu,
                                     int stage, const History& at) {
  const Label c = RawLabel(game, coarse, at, stage);
  std::vector<double> sum(game.NumActions(stage), 0.);
  double mass = 0.;
  for (const History& h : AllHistories(game)) {
    if (RawLabel(game, coarse, h, stage) != c) continue;
    const double q = Probability(game, base, h);
    mass += q;
    const std::vector<double> x = mu(stage, h);
    for (size_t a = 0; a < sum.size(); ++a) sum[a] += q * x[a];
  }
  for (double& v : sum) v /= mass;
  return sum;
}

inline double SqDist(const std::vector<double>& x,
                     const std::vector<double>& y) {
  double d = 0.;
  for (size_t a = 0; a < x.size(); ++a) d += (x[a] - y[a]) * (x[a] - y[a]);
  return d;
}

}  // namespace phide::oracle

#endif  // PHIDE_TESTS_ORACLES_H_
