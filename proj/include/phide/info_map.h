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

#ifndef PHIDE_INFO_MAP_H_
#define PHIDE_INFO_MAP_H_

#include <span>
#include <string>
#include <vector>

#include "phide/game.h"

namespace phide {

// A component of a history that an information map may reveal.
struct Component {
  enum class Kind { kNature, kAction };
  Kind kind = Kind::kNature;
  // Nature component index, or the (zero-based) stage whose action is shown.
  int index = 0;

  static Component Nature(int i) { return {Kind::kNature, i}; }
  static Component Action(int stage) { return {Kind::kAction, stage}; }

  friend bool operator==(const Component&, const Component&) = default;
};

// How one stage labels histories. Either a list of revealed components (the
// label encodes their values) or, when `table` is non-empty, an explicit
// label per prefix (nature, a_0, ..., a_{i-1}) indexed by
// ProductGame::PrefixIndex.
struct StageLabeling {
  std::vector<Component> reveals;
  std::vector<Label> table;

  friend bool operator==(const StageLabeling&, const StageLabeling&) = default;
};

// Stage-indexed information map X = (X_0, ..., X_{L-1}).
class InformationMap {
 public:
  InformationMap() = default;
  InformationMap(std::string name, std::vector<StageLabeling> stages)
      : name_(std::move(name)), stages_(std::move(stages)) {}
  static InformationMap FromReveals(
      std::string name, std::vector<std::vector<Component>> reveals);

  const std::string& name() const { return name_; }
  int NumStages() const { return static_cast<int>(stages_.size()); }
  const StageLabeling& stage(int i) const { return stages_[i]; }
  const std::vector<StageLabeling>& stages() const { return stages_; }

  Label LabelOf(const ProductGame& game, int history, int stage) const;

  // Throws WellPosednessViolation if some X_i reads an action at a stage
  // >= i, and InvalidArgument on shape mismatches with `game`.
  void Validate(const ProductGame& game) const;

  friend bool operator==(const InformationMap&, const InformationMap&) =
      default;

 private:
  std::string name_;
  std::vector<StageLabeling> stages_;
};

// An information map evaluated on every legal history of a game, with labels
// renumbered densely per stage (in order of first appearance). Keeps a
// pointer to `game`, which must outlive the index.
class InfoIndex {
 public:
  // With `validate` false, maps that read future components are accepted;
  // only CheckWellPosed should need that.
  InfoIndex(const ProductGame& game, const InformationMap& map,
            bool validate = true);

  const ProductGame& game() const { return *game_; }
  const std::string& name() const { return name_; }
  int NumStages() const { return static_cast<int>(labels_.size()); }
  int NumLabels(int stage) const {
    return static_cast<int>(raw_labels_[stage].size());
  }
  int LabelId(int stage, int history) const { return labels_[stage][history]; }
  const std::vector<int>& LabelIds(int stage) const { return labels_[stage]; }
  Label RawLabel(int stage, int id) const { return raw_labels_[stage][id]; }
  // Histories carrying each label at `stage`, in increasing index order.
  const std::vector<std::vector<int>>& Members(int stage) const {
    return members_[stage];
  }

 private:
  const ProductGame* game_;
  std::string name_;
  std::vector<std::vector<int>> labels_;
  std::vector<std::vector<Label>> raw_labels_;
  std::vector<std::vector<std::vector<int>>> members_;
};

}  // namespace phide

#endif  // PHIDE_INFO_MAP_H_
