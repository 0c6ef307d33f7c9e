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

#ifndef PHIDE_VERIFICATION_H_
#define PHIDE_VERIFICATION_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace phide {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.;
};

// Optimal team value of Trade Comm (n=3, m=2) under the original map, as
// recorded in tests/fixtures/trade_comm_3_2_value.txt.
std::optional<double> ReadValueFixture(const std::string& path);

// Fixed-point and idempotence laws of the projector on 200 random games.
CriterionResult CheckProjectorLaws();
// Non-decreasing Lagrangian traces of information relaxation rounds.
CriterionResult CheckRelaxationMonotonicity();
// Progressive hiding without relaxation reproduces CFR's runs.csv.
CriterionResult CheckReduction();
// Regret lower bound and penalty bound of progressive hiding runs.
CriterionResult CheckRegretBound();
CriterionResult CheckPenaltyBound();
// Matching Pennies success rates of Monte Carlo CFR and progressive hiding.
CriterionResult CheckMatchingPennies();
// Trade Comm ordering of progressive hiding against the CFR baseline.
CriterionResult CheckTradeComm();
// Optimal values; `trade_comm_3_2` is the recorded fixture value.
CriterionResult CheckOptimalValues(std::optional<double> trade_comm_3_2);
// Exact CFR on Trade Comm with the perfect-recall map.
CriterionResult CheckCfrSanity();

// Runs the listed criteria (all when empty) in order, reporting each result
// through `on_result` as it completes.
std::vector<CriterionResult> RunCriteria(
    const std::vector<int>& ids, const std::string& fixture_path,
    const std::function<void(const CriterionResult&)>& on_result);

// "criterion <id> PASS|FAIL <name>: <detail> (<seconds> s)".
std::string FormatCriterion(const CriterionResult& result);

}  // namespace phide

#endif  // PHIDE_VERIFICATION_H_
