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

#include "phide/policy.h"

#include <cmath>

#include "phide/errors.h"

namespace phide {
namespace {

constexpr double kSimplexTolerance = 1e-12;

void CheckDistribution(std::span<const double> probs) {
  double total = 0.;
  for (double p : probs) {
    if (!(p >= 0.) || !std::isfinite(p)) {
      throw InvalidArgument("policy entry is negative or not finite");
    }
    total += p;
  }
  if (std::abs(total - 1.) > kSimplexTolerance) {
    throw InvalidArgument("local policy sums to " + std::to_string(total));
  }
}

}  // namespace

StagePolicy::StagePolicy(int num_labels, int num_actions)
    : num_labels_(num_labels),
      num_actions_(num_actions),
      probs_(static_cast<size_t>(num_labels) * num_actions, 0.) {}

StagePolicy StagePolicy::Uniform(int num_labels, int num_actions) {
  StagePolicy s(num_labels, num_actions);
  for (double& p : s.probs_) p = 1. / num_actions;
  return s;
}

StagePolicy StagePolicy::Constant(int num_labels, int num_actions,
                                  int action) {
  if (action < 0 || action >= num_actions) {
    throw InvalidArgument("constant action out of range");
  }
  StagePolicy s(num_labels, num_actions);
  for (int g = 0; g < num_labels; ++g) s.MutableLocal(g)[action] = 1.;
  return s;
}

void StagePolicy::SetLocal(int label, std::span<const double> probs) {
  if (static_cast<int>(probs.size()) != num_actions_) {
    throw InvalidArgument("local policy has " + std::to_string(probs.size()) +
                          " entries, stage has " +
                          std::to_string(num_actions_) + " legal actions");
  }
  CheckDistribution(probs);
  std::span<double> dst = MutableLocal(label);
  for (int a = 0; a < num_actions_; ++a) dst[a] = probs[a];
}

BehavioralPolicy BehavioralPolicy::Uniform(const InfoIndex& index) {
  std::vector<StagePolicy> stages;
  for (int i = 0; i < index.NumStages(); ++i) {
    stages.push_back(StagePolicy::Uniform(index.NumLabels(i),
                                          index.game().NumActions(i)));
  }
  return BehavioralPolicy(std::move(stages));
}

bool BehavioralPolicy::IsDeterministic() const {
  for (const StagePolicy& s : stages_) {
    for (double p : s.data()) {
      if (p != 0. && p != 1.) return false;
    }
  }
  return true;
}

int BehavioralPolicy::ActionOf(int stage, int label) const {
  std::span<const double> local = Local(stage, label);
  for (size_t a = 0; a < local.size(); ++a) {
    if (local[a] == 1.) return static_cast<int>(a);
  }
  throw InvalidArgument("local policy is not deterministic");
}

BehavioralPolicy BehavioralPolicy::Modified(int stage, StagePolicy k) const {
  if (stage < 0 || stage >= NumStages()) {
    throw InvalidArgument("stage out of range");
  }
  if (k.num_labels() != stages_[stage].num_labels() ||
      k.num_actions() != stages_[stage].num_actions()) {
    throw InvalidArgument("replacement component has the wrong shape");
  }
  for (int g = 0; g < k.num_labels(); ++g) CheckDistribution(k.Local(g));
  BehavioralPolicy out = *this;
  out.stages_[stage] = std::move(k);
  return out;
}

void BehavioralPolicy::Validate(const InfoIndex& index) const {
  if (NumStages() != index.NumStages()) {
    throw InvalidArgument("policy stage count does not match the map");
  }
  for (int i = 0; i < NumStages(); ++i) {
    const StagePolicy& s = stages_[i];
    if (s.num_labels() != index.NumLabels(i) ||
        s.num_actions() != index.game().NumActions(i)) {
      throw InvalidArgument("policy stage " + std::to_string(i) +
                            " does not match the map's labels");
    }
    for (int g = 0; g < s.num_labels(); ++g) CheckDistribution(s.Local(g));
  }
}

BehavioralPolicy MixWithUniform(const BehavioralPolicy& policy,
                                double epsilon) {
  BehavioralPolicy out = policy;
  for (int i = 0; i < out.NumStages(); ++i) {
    StagePolicy& s = out.mutable_stage(i);
    const double u = 1. / s.num_actions();
    for (int g = 0; g < s.num_labels(); ++g) {
      for (double& p : s.MutableLocal(g)) p = (1. - epsilon) * p + epsilon * u;
    }
  }
  return out;
}

}  // namespace phide
