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

#ifndef PHIDE_GAME_H_
#define PHIDE_GAME_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace phide {

// Opaque information label. Only equality between labels of the same stage
// is meaningful.
using Label = std::int64_t;

// One element of Nature's finite sample space. `components` is what
// information maps may reveal (e.g. the two private items in Trade Comm).
struct NatureState {
  double weight = 0.;
  std::vector<int> components;

  friend bool operator==(const NatureState&, const NatureState&) = default;
};

// An element of the product set Omega x [W]^L. Actions are zero-based.
struct History {
  int nature = 0;
  std::vector<int> actions;

  friend bool operator==(const History&, const History&) = default;
  friend auto operator<=>(const History&, const History&) = default;
};

// A finite game in product form. Nature moves once; stage i is played by
// PlayerOfStage(i) with NumActions(i) legal actions. The legal set is the
// product Omega x [A_0] x ... x [A_{L-1}], and every legal history is
// addressed by a dense mixed-radix index (nature most significant, then
// stage 0, ..., stage L-1), which is also the lexicographic order.
//
// Immutable after construction.
class ProductGame {
 public:
  using RewardFn = std::function<std::vector<double>(const History&)>;

  ProductGame() = default;
  // `rewards` is laid out as [history index][player].
  ProductGame(std::string name, std::vector<NatureState> nature,
              std::vector<int> player_of_stage, std::vector<int> num_actions,
              int num_players, std::vector<double> rewards);
  ProductGame(std::string name, std::vector<NatureState> nature,
              std::vector<int> player_of_stage, std::vector<int> num_actions,
              int num_players, const RewardFn& reward);

  const std::string& name() const { return name_; }
  int NumStages() const { return static_cast<int>(num_actions_.size()); }
  int NumPlayers() const { return num_players_; }
  int NumNatureStates() const { return static_cast<int>(nature_.size()); }
  int NumHistories() const { return num_histories_; }
  // W: the largest per-stage action count.
  int MaxActions() const { return max_actions_; }

  int PlayerOfStage(int stage) const { return player_of_stage_[stage]; }
  int NumActions(int stage) const { return num_actions_[stage]; }
  const std::vector<int>& player_of_stage() const { return player_of_stage_; }
  const std::vector<int>& num_actions() const { return num_actions_; }
  // Stages played by `player`, in increasing order.
  std::vector<int> StagesOf(int player) const;

  const NatureState& Nature(int w) const { return nature_[w]; }
  const std::vector<NatureState>& nature() const { return nature_; }

  int NatureOf(int h) const { return history_nature_[h]; }
  int ActionAt(int h, int stage) const {
    return history_actions_[static_cast<size_t>(h) * NumStages() + stage];
  }
  std::span<const int> ActionsOf(int h) const {
    return {history_actions_.data() + static_cast<size_t>(h) * NumStages(),
            static_cast<size_t>(NumStages())};
  }
  History GetHistory(int h) const;
  // Index of a legal history; throws InvalidArgument on illegal entries.
  int IndexOf(const History& history) const;
  bool IsLegal(const History& history) const;

  // Index of the prefix (nature, a_0, ..., a_{stage-1}) among all prefixes of
  // that length, and the number of such prefixes.
  int PrefixIndex(int h, int stage) const;
  int NumPrefixes(int stage) const { return num_prefixes_[stage]; }

  double Reward(int h, int player) const {
    return rewards_[static_cast<size_t>(h) * num_players_ + player];
  }
  const std::vector<double>& rewards() const { return rewards_; }
  // Largest |r_p(h)| over legal histories and players.
  double MaxAbsReward() const { return max_abs_reward_; }
  double MinReward(int player) const;
  double MaxReward(int player) const;

  friend bool operator==(const ProductGame& a, const ProductGame& b);

 private:
  void Initialize();

  std::string name_;
  std::vector<NatureState> nature_;
  std::vector<int> player_of_stage_;
  std::vector<int> num_actions_;
  int num_players_ = 1;
  std::vector<double> rewards_;

  int num_histories_ = 0;
  int max_actions_ = 0;
  double max_abs_reward_ = 0.;
  std::vector<int> num_prefixes_;
  std::vector<int> history_nature_;
  std::vector<int> history_actions_;
};

}  // namespace phide

#endif  // PHIDE_GAME_H_
