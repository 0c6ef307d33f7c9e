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

#include "phide/evaluation.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "phide/errors.h"
#include "phide/projection.h"

namespace phide {
namespace {

constexpr double kPruneTolerance = 1e-12;

// Number of histories below one prefix of length `stage + 1`, i.e. the index
// distance between siblings at `stage`.
std::vector<int> Strides(const ProductGame& game) {
  const int num_stages = game.NumStages();
  std::vector<int> stride(num_stages + 1, 1);
  for (int i = num_stages - 1; i >= 0; --i) {
    stride[i] = stride[i + 1] * game.NumActions(i);
  }
  // stride[i] now counts histories below a length-i prefix; shift by one so
  // that stride[i] is the sibling distance for the action at stage i.
  std::vector<int> sibling(num_stages);
  for (int i = 0; i < num_stages; ++i) sibling[i] = stride[i + 1];
  return sibling;
}

double CostOf(const StageCosts& costs, int stage, int label, int action,
              int num_actions) {
  if (stage >= static_cast<int>(costs.size()) || costs[stage].empty()) {
    return 0.;
  }
  return costs[stage][static_cast<size_t>(label) * num_actions + action];
}

void CheckInputs(const InfoIndex& index, std::span<const double> values,
                 const StageCosts& costs) {
  const ProductGame& game = index.game();
  if (static_cast<int>(values.size()) != game.NumHistories()) {
    throw InvalidArgument("one value per history expected");
  }
  for (int i = 0; i < static_cast<int>(costs.size()) && i < game.NumStages();
       ++i) {
    if (!costs[i].empty() &&
        costs[i].size() != static_cast<size_t>(index.NumLabels(i)) *
                               game.NumActions(i)) {
      throw InvalidArgument("cost table of stage " + std::to_string(i) +
                            " has the wrong size");
    }
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const InfoIndex& index, int player,
                 const BehavioralPolicy& profile,
                 std::span<const double> values, const StageCosts& costs,
                 long long max_nodes)
      : index_(index),
        game_(index.game()),
        player_(player),
        profile_(profile),
        values_(values),
        costs_(costs),
        max_nodes_(max_nodes),
        stride_(Strides(game_)) {
    assigned_.resize(game_.NumStages());
    for (int i = 0; i < game_.NumStages(); ++i) {
      if (game_.PlayerOfStage(i) == player_) {
        assigned_[i].assign(index_.NumLabels(i), -1);
      }
    }
  }

  DeterministicOptimum Run() {
    Search(Bound());
    if (best_assignment_.empty()) {
      throw Error("branch and bound finished without a complete policy");
    }
    DeterministicOptimum out;
    out.value = best_value_;
    out.nodes = nodes_;
    std::vector<StagePolicy> stages;
    for (int i = 0; i < game_.NumStages(); ++i) {
      if (game_.PlayerOfStage(i) != player_) {
        stages.push_back(profile_.stage(i));
        continue;
      }
      StagePolicy s(index_.NumLabels(i), game_.NumActions(i));
      for (int g = 0; g < s.num_labels(); ++g) {
        s.MutableLocal(g)[std::max(best_assignment_[i][g], 0)] = 1.;
      }
      stages.push_back(std::move(s));
    }
    out.policy = BehavioralPolicy(std::move(stages));
    return out;
  }

 private:
  struct Node {
    double bound = 0.;
    int free_stage = -1;
    int free_label = -1;
  };

  Node Bound() {
    if (++nodes_ > max_nodes_) {
      throw EnumerationTooLarge("deterministic policy search exceeded " +
                                std::to_string(max_nodes_) + " nodes");
    }
    free_stage_ = std::numeric_limits<int>::max();
    free_label_ = std::numeric_limits<int>::max();
    double total = 0.;
    const int per_nature = game_.NumHistories() / game_.NumNatureStates();
    for (int w = 0; w < game_.NumNatureStates(); ++w) {
      const double p = game_.Nature(w).weight;
      if (p == 0.) continue;
      total += p * Value(0, w * per_nature);
    }
    Node node{total, -1, -1};
    if (free_stage_ != std::numeric_limits<int>::max()) {
      node.free_stage = free_stage_;
      node.free_label = free_label_;
    }
    return node;
  }

  // Upper bound on the continuation value below the prefix whose first
  // history is `first`. Only called on prefixes of positive probability.
  double Value(int stage, int first) {
    if (stage == game_.NumStages()) return values_[first];
    const int num_actions = game_.NumActions(stage);
    const int label = index_.LabelId(stage, first);
    if (game_.PlayerOfStage(stage) != player_) {
      std::span<const double> local = profile_.Local(stage, label);
      double v = 0.;
      for (int a = 0; a < num_actions; ++a) {
        if (local[a] == 0.) continue;
        v += local[a] * Value(stage + 1, first + a * stride_[stage]);
      }
      return v;
    }
    const int fixed = assigned_[stage][label];
    if (fixed >= 0) {
      return Value(stage + 1, first + fixed * stride_[stage]) -
             CostOf(costs_, stage, label, fixed, num_actions);
    }
    if (stage < free_stage_ || (stage == free_stage_ && label < free_label_)) {
      free_stage_ = stage;
      free_label_ = label;
    }
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < num_actions; ++a) {
      best = std::max(best, Value(stage + 1, first + a * stride_[stage]) -
                                CostOf(costs_, stage, label, a, num_actions));
    }
    return best;
  }

  void Search(const Node& node) {
    if (node.free_stage < 0) {
      if (node.bound > best_value_) {
        best_value_ = node.bound;
        best_assignment_ = assigned_;
      }
      return;
    }
    const int stage = node.free_stage;
    const int label = node.free_label;
    std::vector<std::pair<Node, int>> children;
    for (int a = 0; a < game_.NumActions(stage); ++a) {
      assigned_[stage][label] = a;
      children.emplace_back(Bound(), a);
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& x, const auto& y) {
                       return x.first.bound > y.first.bound;
                     });
    for (const auto& [child, a] : children) {
      if (child.bound <= best_value_ + kPruneTolerance) break;
      assigned_[stage][label] = a;
      Search(child);
    }
    assigned_[stage][label] = -1;
  }

  const InfoIndex& index_;
  const ProductGame& game_;
  const int player_;
  const BehavioralPolicy& profile_;
  std::span<const double> values_;
  const StageCosts& costs_;
  const long long max_nodes_;
  const std::vector<int> stride_;

  std::vector<std::vector<int>> assigned_;
  std::vector<std::vector<int>> best_assignment_;
  double best_value_ = -std::numeric_limits<double>::infinity();
  long long nodes_ = 0;
  int free_stage_ = 0;
  int free_label_ = 0;
};

}  // namespace

std::vector<History> EnumerateReachable(const ProductGame& game,
                                        const InformationMap& map) {
  map.Validate(game);
  std::vector<History> out;
  out.reserve(game.NumHistories());
  for (int h = 0; h < game.NumHistories(); ++h) {
    out.push_back(game.GetHistory(h));
  }
  return out;
}

std::vector<History> CheckWellPosed(const InfoIndex& index,
                                    const BehavioralPolicy& profile) {
  const ProductGame& game = index.game();
  profile.Validate(index);
  if (!profile.IsDeterministic()) {
    throw InvalidArgument("well-posedness is checked on deterministic profiles");
  }
  std::vector<int> fixed_point(game.NumNatureStates(), -1);
  std::vector<int> count(game.NumNatureStates(), 0);
  for (int h = 0; h < game.NumHistories(); ++h) {
    bool consistent = true;
    for (int i = 0; i < game.NumStages() && consistent; ++i) {
      consistent =
          profile.ActionOf(i, index.LabelId(i, h)) == game.ActionAt(h, i);
    }
    if (!consistent) continue;
    const int w = game.NatureOf(h);
    ++count[w];
    fixed_point[w] = h;
  }
  std::vector<History> out;
  for (int w = 0; w < game.NumNatureStates(); ++w) {
    if (count[w] != 1) {
      throw WellPosednessViolation(
          "Nature state " + std::to_string(w) + " has " +
          std::to_string(count[w]) + " fixed-point histories");
    }
    out.push_back(game.GetHistory(fixed_point[w]));
  }
  return out;
}

std::vector<double> Pushforward(const InfoIndex& index,
                                const BehavioralPolicy& policy) {
  const ProductGame& game = index.game();
  std::vector<double> mass(game.NumHistories());
  for (int h = 0; h < game.NumHistories(); ++h) {
    double q = game.Nature(game.NatureOf(h)).weight;
    for (int i = 0; i < game.NumStages() && q != 0.; ++i) {
      q *= policy.Local(i, index.LabelId(i, h))[game.ActionAt(h, i)];
    }
    mass[h] = q;
  }
  return mass;
}

double Expectation(const InfoIndex& index, const BehavioralPolicy& policy,
                   std::span<const double> values) {
  if (static_cast<int>(values.size()) != index.game().NumHistories()) {
    throw InvalidArgument("one value per history expected");
  }
  const std::vector<double> mass = Pushforward(index, policy);
  double total = 0.;
  for (size_t h = 0; h < mass.size(); ++h) total += mass[h] * values[h];
  return total;
}

double Expectation(const InfoIndex& index, const BehavioralPolicy& policy,
                   const std::function<double(const History&)>& f) {
  const ProductGame& game = index.game();
  std::vector<double> values(game.NumHistories());
  for (int h = 0; h < game.NumHistories(); ++h) values[h] = f(game.GetHistory(h));
  return Expectation(index, policy, values);
}

std::vector<double> RewardsOf(const ProductGame& game, int player) {
  std::vector<double> r(game.NumHistories());
  for (int h = 0; h < game.NumHistories(); ++h) r[h] = game.Reward(h, player);
  return r;
}

double ExpectedReward(const InfoIndex& index, const BehavioralPolicy& policy,
                      int player) {
  return Expectation(index, policy, RewardsOf(index.game(), player));
}

DeterministicOptimum MaximizeDeterministic(const InfoIndex& index, int player,
                                           const BehavioralPolicy& profile,
                                           std::span<const double> values,
                                           const StageCosts& costs,
                                           long long max_nodes) {
  CheckInputs(index, values, costs);
  profile.Validate(index);
  return BranchAndBound(index, player, profile, values, costs, max_nodes)
      .Run();
}

DeterministicOptimum BackwardInductionOptimum(const InfoIndex& index,
                                              std::span<const double> values,
                                              const StageCosts& costs) {
  const ProductGame& game = index.game();
  CheckInputs(index, values, costs);
  for (int i = 0; i < game.NumStages(); ++i) {
    if (game.PlayerOfStage(i) != game.PlayerOfStage(0)) {
      throw InvalidArgument("backward induction needs a single player");
    }
  }
  if (!HasPerfectRecall(index, game.PlayerOfStage(0))) {
    throw PerfectRecallRequired("map '" + index.name() +
                                "' lacks perfect recall");
  }
  const int num_stages = game.NumStages();
  // below[i]: histories under one length-i prefix.
  std::vector<int> below(num_stages + 1, 1);
  for (int i = num_stages - 1; i >= 0; --i) {
    below[i] = below[i + 1] * game.NumActions(i);
  }
  std::vector<StagePolicy> stages(num_stages);
  std::vector<double> next(values.begin(), values.end());
  for (int i = num_stages - 1; i >= 0; --i) {
    const int num_actions = game.NumActions(i);
    const int num_labels = index.NumLabels(i);
    std::vector<double> q(static_cast<size_t>(num_labels) * num_actions, 0.);
    for (int k = 0; k < game.NumPrefixes(i); ++k) {
      const int first = k * below[i];
      const int g = index.LabelId(i, first);
      const double p = game.Nature(game.NatureOf(first)).weight;
      for (int a = 0; a < num_actions; ++a) {
        q[static_cast<size_t>(g) * num_actions + a] +=
            p * (next[k * num_actions + a] -
                 CostOf(costs, i, g, a, num_actions));
      }
    }
    std::vector<int> choice(num_labels, 0);
    stages[i] = StagePolicy(num_labels, num_actions);
    for (int g = 0; g < num_labels; ++g) {
      const double* row = q.data() + static_cast<size_t>(g) * num_actions;
      choice[g] = static_cast<int>(std::max_element(row, row + num_actions) -
                                   row);
      stages[i].MutableLocal(g)[choice[g]] = 1.;
    }
    std::vector<double> current(game.NumPrefixes(i));
    for (int k = 0; k < game.NumPrefixes(i); ++k) {
      const int g = index.LabelId(i, k * below[i]);
      current[k] = next[k * num_actions + choice[g]] -
                   CostOf(costs, i, g, choice[g], num_actions);
    }
    next = std::move(current);
  }
  DeterministicOptimum out;
  for (int w = 0; w < game.NumNatureStates(); ++w) {
    out.value += game.Nature(w).weight * next[w];
  }
  out.policy = BehavioralPolicy(std::move(stages));
  return out;
}

DeterministicOptimum BestResponse(const InfoIndex& index, int player,
                                  const BehavioralPolicy& profile,
                                  long long max_nodes) {
  const std::vector<double> r = RewardsOf(index.game(), player);
  return MaximizeDeterministic(index, player, profile, r, {}, max_nodes);
}

double BestResponseValue(const InfoIndex& index, int player,
                         const BehavioralPolicy& profile,
                         long long max_nodes) {
  return BestResponse(index, player, profile, max_nodes).value;
}

}  // namespace phide
