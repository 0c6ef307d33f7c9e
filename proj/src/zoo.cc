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

#include "phide/zoo.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "phide/errors.h"

namespace phide {
namespace {

using C = Component;

std::map<std::string, std::string> ParseOptions(const std::string& text,
                                                const std::string& selector) {
  std::map<std::string, std::string> options;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("game: malformed option '" + item + "' in '" +
                        selector + "'");
    }
    options[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return options;
}

double TakeNumber(std::map<std::string, std::string>& options,
                  const std::string& key, double fallback,
                  const std::string& selector) {
  auto it = options.find(key);
  if (it == options.end()) return fallback;
  size_t used = 0;
  double value = 0.;
  try {
    value = std::stod(it->second, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != it->second.size()) {
    throw ConfigError("game: option '" + key + "' of '" + selector +
                      "' is not a number");
  }
  options.erase(it);
  return value;
}

void RejectLeftovers(const std::map<std::string, std::string>& options,
                     const std::string& selector) {
  if (!options.empty()) {
    throw ConfigError("game: unknown option '" + options.begin()->first +
                      "' in '" + selector + "'");
  }
}

}  // namespace

const InformationMap& GameWithMaps::map(const std::string& name) const {
  for (const InformationMap& m : maps) {
    if (m.name() == name) return m;
  }
  throw InvalidArgument("game '" + game.name() + "' has no map '" + name + "'");
}

bool GameWithMaps::has_map(const std::string& name) const {
  return std::any_of(maps.begin(), maps.end(), [&](const InformationMap& m) {
    return m.name() == name;
  });
}

GameWithMaps BuildTradeComm(const TradeCommSpec& spec) {
  const int n = spec.n;
  const int m = spec.m;
  if (n < 1 || m < 1) {
    throw InvalidArgument("trade comm needs n >= 1 and m >= 1");
  }
  std::vector<NatureState> nature;
  for (int s1 = 0; s1 < n; ++s1) {
    for (int s2 = 0; s2 < n; ++s2) {
      nature.push_back({1. / (n * n), {s1, s2}});
    }
  }
  auto reward = [n](const History& h) {
    const int s1 = h.nature / n;
    const int s2 = h.nature % n;
    const int d1_first = h.actions[2] / n;
    const int d1_second = h.actions[2] % n;
    const int d2_first = h.actions[3] / n;
    const int d2_second = h.actions[3] % n;
    const bool trade = d1_first == s1 && d2_second == s1 && d2_first == s2 &&
                       d1_second == s2;
    return std::vector<double>{trade ? 1. : 0.};
  };
  GameWithMaps out{
      ProductGame("trade_comm(n=" + std::to_string(n) +
                      ",m=" + std::to_string(m) + ")",
                  std::move(nature), {0, 0, 0, 0}, {m, m, n * n, n * n}, 1,
                  reward),
      {}};
  const C s1 = C::Nature(0);
  const C s2 = C::Nature(1);
  const C m1 = C::Action(0);
  const C m2 = C::Action(1);
  const C d1 = C::Action(2);
  out.maps.push_back(InformationMap::FromReveals(
      "original", {{s1}, {s2}, {s1, m1, m2}, {s2, m2, m1}}));
  out.maps.push_back(InformationMap::FromReveals(
      "cheat", {{s1, s2}, {s2, s1}, {s1, s2, m2}, {s2, s1, m1}}));
  out.maps.push_back(InformationMap::FromReveals(
      "perfect_recall",
      {{s1}, {s1, s2, m1}, {s1, s2, m1, m2}, {s1, s2, m1, m2, d1}}));
  for (const InformationMap& map : out.maps) map.Validate(out.game);
  return out;
}

GameWithMaps BuildMatchingPennies(const MatchingPenniesSpec& spec) {
  if (!(spec.payoff_mismatch < spec.payoff_pass &&
        spec.payoff_pass < spec.payoff_match)) {
    throw InvalidArgument(
        "matching pennies needs mismatch < pass < match payoffs");
  }
  std::vector<NatureState> nature = {{0.5, {kSame}}, {0.5, {kDifferent}}};
  auto reward = [spec](const History& h) {
    const int alice = h.actions[0];
    const int bob = h.actions[1];
    if (bob == kPass) return std::vector<double>{spec.payoff_pass};
    const bool wins = (h.nature == kSame) == (alice == bob);
    return std::vector<double>{wins ? spec.payoff_match
                                    : spec.payoff_mismatch};
  };
  GameWithMaps out{ProductGame("matching_pennies", std::move(nature), {0, 0},
                               {2, 3}, 1, reward),
                   {}};
  out.maps.push_back(InformationMap::FromReveals(
      "original", {{C::Nature(0)}, {C::Action(0)}}));
  out.maps.push_back(InformationMap::FromReveals(
      "relaxed", {{C::Nature(0)}, {C::Nature(0), C::Action(0)}}));
  for (const InformationMap& map : out.maps) map.Validate(out.game);
  return out;
}

GameWithMaps BuildRandomGame(std::uint64_t seed, const RandomGameCaps& caps) {
  if (caps.max_nature < 1 || caps.max_stages < 1 || caps.max_actions < 1) {
    throw InvalidArgument("random game caps must be positive");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(seq);
  auto uniform_int = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  std::uniform_real_distribution<double> unit(0., 1.);

  const int num_nature = uniform_int(1, caps.max_nature);
  const int num_stages = uniform_int(1, caps.max_stages);
  std::vector<int> actions(num_stages);
  for (int& a : actions) a = uniform_int(1, caps.max_actions);

  std::vector<double> weights(num_nature);
  for (double& w : weights) w = 0.1 + unit(rng);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.);
  std::vector<NatureState> nature;
  double assigned = 0.;
  for (int w = 0; w < num_nature; ++w) {
    const double weight =
        w + 1 == num_nature ? 1. - assigned : weights[w] / total;
    assigned += weight;
    nature.push_back({weight, {w}});
  }

  int num_histories = num_nature;
  for (int a : actions) num_histories *= a;
  std::vector<double> rewards(num_histories);
  for (double& r : rewards) r = 2. * unit(rng) - 1.;

  GameWithMaps out{ProductGame("random(seed=" + std::to_string(seed) + ")",
                               std::move(nature), std::vector<int>(num_stages, 0),
                               actions, 1, std::move(rewards)),
                   {}};
  const ProductGame& game = out.game;
  std::vector<StageLabeling> fine(num_stages);
  std::vector<StageLabeling> coarse(num_stages);
  for (int i = 0; i < num_stages; ++i) {
    const int prefixes = game.NumPrefixes(i);
    // Mostly informative fine labels, sometimes the full prefix.
    const int fine_count =
        unit(rng) < 0.3 ? prefixes : uniform_int(1, prefixes);
    std::vector<Label> merge(fine_count);
    const int coarse_count = uniform_int(1, fine_count);
    for (Label& c : merge) c = uniform_int(0, coarse_count - 1);
    fine[i].table.resize(prefixes);
    coarse[i].table.resize(prefixes);
    for (int k = 0; k < prefixes; ++k) {
      const Label label =
          fine_count == prefixes ? k : uniform_int(0, fine_count - 1);
      fine[i].table[k] = label;
      coarse[i].table[k] = merge[label];
    }
  }
  out.maps.emplace_back("fine", std::move(fine));
  out.maps.emplace_back("coarse", std::move(coarse));
  for (const InformationMap& map : out.maps) map.Validate(out.game);
  return out;
}

GameWithMaps BuildGame(const std::string& selector) {
  const size_t colon = selector.find(':');
  const std::string kind = selector.substr(0, colon);
  auto options = ParseOptions(
      colon == std::string::npos ? "" : selector.substr(colon + 1), selector);
  if (kind == "trade_comm") {
    TradeCommSpec spec;
    spec.n = static_cast<int>(TakeNumber(options, "n", spec.n, selector));
    spec.m = static_cast<int>(TakeNumber(options, "m", spec.m, selector));
    RejectLeftovers(options, selector);
    if (spec.n < 1 || spec.m < 1) {
      throw ConfigError("game: trade_comm needs n >= 1 and m >= 1");
    }
    return BuildTradeComm(spec);
  }
  if (kind == "matching_pennies") {
    MatchingPenniesSpec spec;
    spec.payoff_match = TakeNumber(options, "match", spec.payoff_match, selector);
    spec.payoff_mismatch =
        TakeNumber(options, "mismatch", spec.payoff_mismatch, selector);
    spec.payoff_pass = TakeNumber(options, "pass", spec.payoff_pass, selector);
    RejectLeftovers(options, selector);
    if (!(spec.payoff_mismatch < spec.payoff_pass &&
          spec.payoff_pass < spec.payoff_match)) {
      throw ConfigError("game: matching_pennies needs mismatch < pass < match");
    }
    return BuildMatchingPennies(spec);
  }
  if (kind == "random") {
    auto it = options.find("seed");
    if (it == options.end()) throw ConfigError("game: random needs seed=S");
    std::uint64_t seed = 0;
    const std::string& text = it->second;
    const auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
      throw ConfigError("game: random seed '" + text +
                        "' is not an unsigned integer");
    }
    options.erase(it);
    RejectLeftovers(options, selector);
    return BuildRandomGame(seed);
  }
  throw ConfigError("game: unknown game '" + kind + "'");
}

}  // namespace phide
