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

#ifndef PHIDE_PROGRESSIVE_HIDING_H_
#define PHIDE_PROGRESSIVE_HIDING_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phide/counterfactual.h"
#include "phide/evaluation.h"
#include "phide/info_map.h"
#include "phide/learner_table.h"
#include "phide/policy.h"
#include "phide/projection.h"

namespace phide {

enum class ScheduleKind { kConstant, kLinearRamp, kPayoffController };

// "constant" | "ramp" | "controller".
ScheduleKind ParseScheduleKind(const std::string& name);
std::string ScheduleKindName(ScheduleKind kind);

// Penalty parameters lambda^t, t = 1, 2, ...
class PenaltySchedule {
 public:
  static PenaltySchedule Constant(double lambda);
  // lambda^t = lambda0 * t / horizon.
  static PenaltySchedule LinearRamp(double lambda0, int horizon);
  // Starts at lambda0; multiplied by `factor` after an iteration whose
  // projected payoff exceeds `target`, divided by it otherwise.
  static PenaltySchedule PayoffController(double lambda0, double target,
                                          double factor = 1.1);

  ScheduleKind kind() const { return kind_; }
  double Lambda(int t) const;
  void Update(double projected_payoff);

 private:
  PenaltySchedule(ScheduleKind kind, double lambda) : kind_(kind), lambda_(lambda) {}

  ScheduleKind kind_;
  double lambda_;
  int horizon_ = 1;
  double target_ = 0.;
  double factor_ = 1.;
};

// lambda * ||mu_i(X~_i(h)) - gamma_i(X_i(h))||^2.
double PenaltyTerm(double lambda, const KeyedPolicy& mu,
                   const KeyedPolicy& gamma, int stage, int history);

// PenaltyTerm for every stage of `stages` and history.
HistoryCosts PenaltyCosts(const InfoIndex& relaxed, const BehavioralPolicy& mu,
                          const InfoIndex& coarse,
                          const BehavioralPolicy& gamma, double lambda,
                          std::span<const int> stages);

// 2 lambda <mu_i(X~_i(h)) - gamma_i(X_i(h)), delta_{h_i}> for every stage of
// `stages` and history: the linearized penalty at the action h plays.
HistoryCosts LinearizedPenalties(const InfoIndex& relaxed,
                                 const BehavioralPolicy& mu,
                                 const InfoIndex& coarse,
                                 const BehavioralPolicy& gamma, double lambda,
                                 std::span<const int> stages);

// theta_{i,g} for every stage of `stages` and relaxed label g, indexed
// [g * A_i + d]:
//   E_{mu(i -> delta_d)}[ r_p - 2 lambda <mu_i(h) - gamma_i(h), delta_d>
//                         - sum_{i' > i} penalty_{i'}(h) | X~_i = g ].
LabelActionTable LocalRewardVectors(const InfoIndex& relaxed,
                                    const BehavioralPolicy& mu,
                                    const InfoIndex& coarse,
                                    const BehavioralPolicy& gamma,
                                    double lambda, std::span<const int> stages,
                                    double prefix_floor = 1e-6);

// rho(mu) = E_mu[ r_p - sum_i lambda ||mu_i - gamma_i||^2 ] for `mu` keyed by
// the relaxed map.
double AuxiliaryCriterion(const InfoIndex& relaxed, const BehavioralPolicy& mu,
                          const InfoIndex& coarse,
                          const BehavioralPolicy& gamma, double lambda,
                          int player);

struct PhConfig {
  int player = 0;
  LearnerConfig learner;
  PenaltySchedule schedule = PenaltySchedule::Constant(0.);
  SamplingMode mode = SamplingMode::kExact;
  double exploration = 0.6;
  // Uniform mixing of the projection base and of the conditioning weights.
  double floor = 1e-6;
  std::uint64_t seed = 0;
  // Keeps mu^t, gamma^t and lambda^t of every iteration.
  bool keep_history = false;
};

struct RegretReport {
  int iterations = 0;
  // Per stage and relaxed label, R_loc(i, g).
  std::vector<std::vector<double>> local_regret;
  double sum_positive_local_regret = 0.;
  // (1/T) sum_t lambda^t E_{mu^t}[ sum_i ||mu^t_i - gamma^t_i||^2 ].
  double average_penalty = 0.;
  double max_abs_reward = 0.;
  bool relaxed_perfect_recall = false;
  // max over deterministic mu of (1/T) sum_t (rho_t(mu) - rho_t(mu^t)).
  bool lower_bound_available = false;
  double regret_lower_bound = 0.;
  std::string lower_bound_method;
  BehavioralPolicy best_deterministic;
  // regret_lower_bound <= sum_positive_local_regret + 1e-9 (meaningful under
  // perfect recall of the relaxed map when the bound is available).
  bool regret_bound_holds = false;
  // average_penalty <= sum_positive_local_regret + 2 max|r| + 1e-9.
  bool penalty_bound_holds = false;
};

// Progressive Hiding for a team game: player `player` owns every stage, plays
// through one learner per (stage, label) of the relaxed map, and outputs the
// projection gamma onto policies implementable for the coarse map.
class ProgressiveHiding {
 public:
  // Both indices must outlive the run and describe the same game. The
  // relaxed map need not be finer than the coarse one: penalties compare
  // mu_i(X~_i(h)) with gamma_i(X_i(h)) history by history.
  ProgressiveHiding(const InfoIndex& coarse, const InfoIndex& relaxed,
                    PhConfig config);

  // Decide all, project, compute every theta from the same (mu^t, gamma),
  // observe all. Returns gamma.
  const BehavioralPolicy& Iterate();

  int iteration() const { return learners_.iterations(); }
  const BehavioralPolicy& current_policy() const { return current_; }
  const BehavioralPolicy& projected() const { return projected_; }
  const LearnerTable& learners() const { return learners_; }
  const std::vector<IterationRecord>& trace() const { return trace_; }
  const LabelActionTable& last_local_rewards() const { return last_theta_; }
  const std::vector<BehavioralPolicy>& iterate_history() const {
    return iterate_history_;
  }
  const std::vector<BehavioralPolicy>& projected_history() const {
    return projected_history_;
  }

  // (1/T) sum_t rho_t(mu) for any mu keyed by the relaxed map.
  double AverageAuxiliary(const BehavioralPolicy& mu) const;
  // (1/T) sum_t rho_t(mu^t).
  double AverageRealizedAuxiliary() const;

  // Throws EnumerationTooLarge only through the fallback search, in which
  // case the lower bound is reported unavailable instead.
  RegretReport Report(long long max_nodes = kDefaultMaxSearchNodes) const;

 private:
  const InfoIndex& coarse_;
  const InfoIndex& relaxed_;
  PhConfig config_;
  std::mt19937_64 rng_;
  std::vector<int> stages_;
  LearnerTable learners_;
  BehavioralPolicy current_;
  BehavioralPolicy projected_;
  LabelActionTable last_theta_;
  std::vector<IterationRecord> trace_;
  std::vector<BehavioralPolicy> iterate_history_;
  std::vector<BehavioralPolicy> projected_history_;

  // Sufficient statistics of sum_t lambda^t ||x - gamma^t_i(c)||^2.
  double lambda_sum_ = 0.;
  LabelActionTable weighted_gamma_;               // [stage][c * A + a]
  std::vector<std::vector<double>> weighted_sq_;  // [stage][c]
  double realized_auxiliary_ = 0.;
};

}  // namespace phide

#endif  // PHIDE_PROGRESSIVE_HIDING_H_
