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

#ifndef PHIDE_POLICY_H_
#define PHIDE_POLICY_H_

#include <span>
#include <vector>

#include "phide/info_map.h"

namespace phide {

// The i-th component of a behavioral policy: one probability vector over the
// stage's legal actions per information label id.
class StagePolicy {
 public:
  StagePolicy() = default;
  StagePolicy(int num_labels, int num_actions);
  static StagePolicy Uniform(int num_labels, int num_actions);
  // Every label plays `action`.
  static StagePolicy Constant(int num_labels, int num_actions, int action);

  int num_labels() const { return num_labels_; }
  int num_actions() const { return num_actions_; }
  std::span<const double> Local(int label) const {
    return {probs_.data() + static_cast<size_t>(label) * num_actions_,
            static_cast<size_t>(num_actions_)};
  }
  std::span<double> MutableLocal(int label) {
    return {probs_.data() + static_cast<size_t>(label) * num_actions_,
            static_cast<size_t>(num_actions_)};
  }
  // Checks `probs` is a distribution over this stage's actions.
  void SetLocal(int label, std::span<const double> probs);
  const std::vector<double>& data() const { return probs_; }

  friend bool operator==(const StagePolicy&, const StagePolicy&) = default;

 private:
  int num_labels_ = 0;
  int num_actions_ = 0;
  std::vector<double> probs_;
};

// A behavioral policy profile, keyed by the dense label ids of an InfoIndex.
// Which information map indexes it decides whether it is read as a member of
// the admissible, implementable, or relaxed policy set.
class BehavioralPolicy {
 public:
  BehavioralPolicy() = default;
  explicit BehavioralPolicy(std::vector<StagePolicy> stages)
      : stages_(std::move(stages)) {}
  static BehavioralPolicy Uniform(const InfoIndex& index);

  int NumStages() const { return static_cast<int>(stages_.size()); }
  const StagePolicy& stage(int i) const { return stages_[i]; }
  StagePolicy& mutable_stage(int i) { return stages_[i]; }
  std::span<const double> Local(int stage, int label) const {
    return stages_[stage].Local(label);
  }

  // True if every local vector is a vertex of the simplex.
  bool IsDeterministic() const;
  // Action of a deterministic local vector.
  int ActionOf(int stage, int label) const;

  // mu(i -> k): the same profile with stage `stage` replaced. Throws
  // InvalidArgument if `k` does not fit the stage's labels and actions or is
  // not a distribution.
  BehavioralPolicy Modified(int stage, StagePolicy k) const;

  // Throws InvalidArgument unless the shape matches `index` and every local
  // vector is a distribution within 1e-12.
  void Validate(const InfoIndex& index) const;

  friend bool operator==(const BehavioralPolicy&,
                         const BehavioralPolicy&) = default;

 private:
  std::vector<StagePolicy> stages_;
};

// (1 - epsilon) * policy + epsilon * uniform, which has full support.
BehavioralPolicy MixWithUniform(const BehavioralPolicy& policy,
                                double epsilon);

}  // namespace phide

#endif  // PHIDE_POLICY_H_
