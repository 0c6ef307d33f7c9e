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

#include "phide/info_map.h"

#include <algorithm>
#include <unordered_map>

#include "phide/errors.h"

namespace phide {

InformationMap InformationMap::FromReveals(
    std::string name, std::vector<std::vector<Component>> reveals) {
  std::vector<StageLabeling> stages;
  stages.reserve(reveals.size());
  for (auto& r : reveals) stages.push_back(StageLabeling{std::move(r), {}});
  return InformationMap(std::move(name), std::move(stages));
}

Label InformationMap::LabelOf(const ProductGame& game, int history,
                              int stage) const {
  const StageLabeling& s = stages_[stage];
  if (!s.table.empty()) return s.table[game.PrefixIndex(history, stage)];
  // Mixed-radix encoding of the revealed values, each shifted by one so that
  // leading zeros stay distinguishable. Falls back to FNV-1a when the values
  // do not fit in 64 bits.
  const NatureState& nature = game.Nature(game.NatureOf(history));
  unsigned long long code = 0;
  bool overflow = false;
  for (const Component& c : s.reveals) {
    long long value;
    if (c.kind == Component::Kind::kNature) {
      value = nature.components.at(c.index);
    } else {
      value = game.ActionAt(history, c.index);
    }
    const unsigned long long radix = 1ull << 12;
    if (value < 0 || value + 1 >= static_cast<long long>(radix)) {
      overflow = true;
    }
    if (code > (~0ull) / radix) overflow = true;
    code = code * radix + static_cast<unsigned long long>(value + 1);
  }
  if (overflow) {
    code = 1469598103934665603ull;
    for (const Component& c : s.reveals) {
      long long value = c.kind == Component::Kind::kNature
                            ? nature.components.at(c.index)
                            : game.ActionAt(history, c.index);
      code = (code ^ static_cast<unsigned long long>(value + 1)) *
             1099511628211ull;
    }
  }
  return static_cast<Label>(code);
}

void InformationMap::Validate(const ProductGame& game) const {
  if (NumStages() != game.NumStages()) {
    throw InvalidArgument("information map '" + name_ + "' has " +
                          std::to_string(NumStages()) + " stages, game has " +
                          std::to_string(game.NumStages()));
  }
  for (int i = 0; i < NumStages(); ++i) {
    const StageLabeling& s = stages_[i];
    if (!s.table.empty()) {
      if (static_cast<int>(s.table.size()) != game.NumPrefixes(i)) {
        throw InvalidArgument("label table of stage " + std::to_string(i) +
                              " has the wrong size");
      }
      continue;
    }
    for (const Component& c : s.reveals) {
      if (c.kind == Component::Kind::kAction) {
        if (c.index >= i) {
          throw WellPosednessViolation(
              "map '" + name_ + "' stage " + std::to_string(i) +
              " reads the action of stage " + std::to_string(c.index));
        }
        if (c.index < 0) throw InvalidArgument("negative action component");
      } else {
        for (const NatureState& n : game.nature()) {
          if (c.index < 0 ||
              c.index >= static_cast<int>(n.components.size())) {
            throw InvalidArgument("nature component out of range");
          }
        }
      }
    }
  }
}

InfoIndex::InfoIndex(const ProductGame& game, const InformationMap& map,
                     bool validate)
    : game_(&game), name_(map.name()) {
  if (validate) {
    map.Validate(game);
  } else if (map.NumStages() != game.NumStages()) {
    throw InvalidArgument("information map stage count mismatch");
  }
  const int num_stages = game.NumStages();
  labels_.assign(num_stages, std::vector<int>(game.NumHistories()));
  raw_labels_.assign(num_stages, {});
  members_.assign(num_stages, {});
  for (int i = 0; i < num_stages; ++i) {
    std::unordered_map<Label, int> ids;
    for (int h = 0; h < game.NumHistories(); ++h) {
      const Label raw = map.LabelOf(game, h, i);
      auto [it, inserted] =
          ids.emplace(raw, static_cast<int>(raw_labels_[i].size()));
      if (inserted) {
        raw_labels_[i].push_back(raw);
        members_[i].emplace_back();
      }
      labels_[i][h] = it->second;
      members_[i][it->second].push_back(h);
    }
  }
}

}  // namespace phide
