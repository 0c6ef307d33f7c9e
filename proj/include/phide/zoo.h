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

#ifndef PHIDE_ZOO_H_
#define PHIDE_ZOO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "phide/game.h"
#include "phide/info_map.h"

namespace phide {

// A game with its named information maps. InfoIndex objects built from it
// point into `game`, so keep the bundle in place while they are alive.
struct GameWithMaps {
  ProductGame game;
  std::vector<InformationMap> maps;

  // Throws InvalidArgument for an unknown name.
  const InformationMap& map(const std::string& name) const;
  bool has_map(const std::string& name) const;
};

struct TradeCommSpec {
  int n = 2;  // items
  int m = 2;  // messages
};

// Two team members draw items s1, s2 in [n]; stage 0 sends m1, stage 1 sends
// m2 (m actions each); stages 2 and 3 request trades d1, d2 in [n] x [n]
// (encoded as first * n + second). Maps: "original", "cheat",
// "perfect_recall".
GameWithMaps BuildTradeComm(const TradeCommSpec& spec);

struct MatchingPenniesSpec {
  double payoff_match = 1.;
  double payoff_mismatch = 0.;
  double payoff_pass = 0.6;
};

inline constexpr int kSame = 0;
inline constexpr int kDifferent = 1;
inline constexpr int kHead = 0;
inline constexpr int kTail = 1;
inline constexpr int kPass = 2;

// Nature draws SAME or DIFFERENT; Alice (stage 0) sees it and plays H or T;
// Bob (stage 1) sees Alice's coin and plays H, T or PASS. Maps: "original"
// and "relaxed" (Bob also sees Nature).
GameWithMaps BuildMatchingPennies(const MatchingPenniesSpec& spec = {});

struct RandomGameCaps {
  int max_nature = 4;
  int max_stages = 4;
  int max_actions = 3;
};

// Single-player game with random Nature weights, stage sizes and rewards in
// [-1, 1]. Maps: "fine" (random prefix labels) and "coarse" (a random merge
// of the fine labels). Deterministic given the seed.
GameWithMaps BuildRandomGame(std::uint64_t seed,
                             const RandomGameCaps& caps = {});

// "trade_comm:n=2,m=2" | "matching_pennies[:match=1,mismatch=0,pass=0.6]" |
// "random:seed=S". Throws ConfigError on a malformed selector.
GameWithMaps BuildGame(const std::string& selector);

}  // namespace phide

#endif  // PHIDE_ZOO_H_
