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

#include "phide/game.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "phide/errors.h"

namespace phide {
namespace {

constexpr double kWeightTolerance = 1e-12;
constexpr long long kMaxHistories = 1 << 24;

}  // namespace

ProductGame::ProductGame(std::string name, std::vector<NatureState> nature,
                         std::vector<int> player_of_stage,
                         std::vector<int> num_actions, int num_players,
                         std::vector<double> rewards)
    : name_(std::move(name)),
      nature_(std::move(nature)),
      player_of_stage_(std::move(player_of_stage)),
      num_actions_(std::move(num_actions)),
      num_players_(num_players),
      rewards_(std::move(rewards)) {
  Initialize();
  if (rewards_.size() !=
      static_cast<size_t>(num_histories_) * static_cast<size_t>(num_players_)) {
    throw InvalidArgument("reward table has " +
                          std::to_string(rewards_.size()) +
                          " entries, expected histories x players = " +
                          std::to_string(num_histories_ * num_players_));
  }
  for (double r : rewards_) {
    if (!std::isfinite(r)) throw InvalidArgument("reward is not finite");
    max_abs_reward_ = std::max(max_abs_reward_, std::abs(r));
  }
}

ProductGame::ProductGame(std::string name, std::vector<NatureState> nature,
                         std::vector<int> player_of_stage,
                         std::vector<int> num_actions, int num_players,
                         const RewardFn& reward)
    : name_(std::move(name)),
      nature_(std::move(nature)),
      player_of_stage_(std::move(player_of_stage)),
      num_actions_(std::move(num_actions)),
      num_players_(num_players) {
  Initialize();
  rewards_.reserve(static_cast<size_t>(num_histories_) * num_players_);
  for (int h = 0; h < num_histories_; ++h) {
    std::vector<double> r = reward(GetHistory(h));
    if (static_cast<int>(r.size()) != num_players_) {
      throw InvalidArgument("reward function returned " +
                            std::to_string(r.size()) + " values for " +
                            std::to_string(num_players_) + " players");
    }
    for (double v : r) {
      if (!std::isfinite(v)) throw InvalidArgument("reward is not finite");
      max_abs_reward_ = std::max(max_abs_reward_, std::abs(v));
      rewards_.push_back(v);
    }
  }
}

void ProductGame::Initialize() {
  if (nature_.empty()) throw InvalidArgument("Nature has no states");
  if (num_actions_.empty()) throw InvalidArgument("game has no stages");
  if (player_of_stage_.size() != num_actions_.size()) {
    throw InvalidArgument("player_of_stage and num_actions differ in length");
  }
  if (num_players_ < 1) throw InvalidArgument("need at least one player");
  double total = 0.;
  for (const NatureState& s : nature_) {
    if (!(s.weight >= 0. && s.weight <= 1.)) {
      throw InvalidArgument("Nature weight outside [0, 1]");
    }
    total += s.weight;
  }
  if (std::abs(total - 1.) > kWeightTolerance) {
    throw InvalidArgument("Nature weights sum to " + std::to_string(total));
  }
  for (size_t i = 0; i < num_actions_.size(); ++i) {
    if (num_actions_[i] < 1) {
      throw InvalidArgument("stage " + std::to_string(i) +
                            " has no legal action");
    }
    if (player_of_stage_[i] < 0 || player_of_stage_[i] >= num_players_) {
      throw InvalidArgument("stage " + std::to_string(i) +
                            " assigned to unknown player");
    }
  }
  max_actions_ = *std::max_element(num_actions_.begin(), num_actions_.end());

  const int num_stages = NumStages();
  num_prefixes_.assign(num_stages + 1, 0);
  long long count = static_cast<long long>(nature_.size());
  for (int i = 0; i < num_stages; ++i) {
    num_prefixes_[i] = static_cast<int>(count);
    count *= num_actions_[i];
    if (count > kMaxHistories) throw EnumerationTooLarge("game too large");
  }
  num_prefixes_[num_stages] = static_cast<int>(count);
  num_histories_ = static_cast<int>(count);

  history_nature_.resize(num_histories_);
  history_actions_.resize(static_cast<size_t>(num_histories_) * num_stages);
  for (int h = 0; h < num_histories_; ++h) {
    int rest = h;
    for (int i = num_stages - 1; i >= 0; --i) {
      history_actions_[static_cast<size_t>(h) * num_stages + i] =
          rest % num_actions_[i];
      rest /= num_actions_[i];
    }
    history_nature_[h] = rest;
  }
}

std::vector<int> ProductGame::StagesOf(int player) const {
  std::vector<int> stages;
  for (int i = 0; i < NumStages(); ++i) {
    if (player_of_stage_[i] == player) stages.push_back(i);
  }
  return stages;
}

History ProductGame::GetHistory(int h) const {
  std::span<const int> a = ActionsOf(h);
  return History{NatureOf(h), std::vector<int>(a.begin(), a.end())};
}

bool ProductGame::IsLegal(const History& history) const {
  if (history.nature < 0 || history.nature >= NumNatureStates()) return false;
  if (static_cast<int>(history.actions.size()) != NumStages()) return false;
  for (int i = 0; i < NumStages(); ++i) {
    if (history.actions[i] < 0 || history.actions[i] >= num_actions_[i]) {
      return false;
    }
  }
  return true;
}

int ProductGame::IndexOf(const History& history) const {
  if (!IsLegal(history)) throw InvalidArgument("illegal history");
  int index = history.nature;
  for (int i = 0; i < NumStages(); ++i) {
    index = index * num_actions_[i] + history.actions[i];
  }
  return index;
}

int ProductGame::PrefixIndex(int h, int stage) const {
  int index = NatureOf(h);
  for (int i = 0; i < stage; ++i) index = index * num_actions_[i] + ActionAt(h, i);
  return index;
}

double ProductGame::MinReward(int player) const {
  double m = std::numeric_limits<double>::infinity();
  for (int h = 0; h < num_histories_; ++h) m = std::min(m, Reward(h, player));
  return m;
}

double ProductGame::MaxReward(int player) const {
  double m = -std::numeric_limits<double>::infinity();
  for (int h = 0; h < num_histories_; ++h) m = std::max(m, Reward(h, player));
  return m;
}

bool operator==(const ProductGame& a, const ProductGame& b) {
  return a.name_ == b.name_ && a.nature_ == b.nature_ &&
         a.player_of_stage_ == b.player_of_stage_ &&
         a.num_actions_ == b.num_actions_ &&
         a.num_players_ == b.num_players_ && a.rewards_ == b.rewards_;
}

}  // namespace phide
