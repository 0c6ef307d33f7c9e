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

#include "phide/progressive_hiding.h"

#include <cmath>

#include "phide/errors.h"

namespace phide {
namespace {

double Dot(std::span<const double> x, std::span<const double> y) {
  double total = 0.;
  for (size_t a = 0; a < x.size(); ++a) total += x[a] * y[a];
  return total;
}

}  // namespace

ScheduleKind ParseScheduleKind(const std::string& name) {
  if (name == "constant") return ScheduleKind::kConstant;
  if (name == "ramp") return ScheduleKind::kLinearRamp;
  if (name == "controller") return ScheduleKind::kPayoffController;
  throw ConfigError("schedule: unknown kind '" + name + "'");
}

std::string ScheduleKindName(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::kConstant:
      return "constant";
    case ScheduleKind::kLinearRamp:
      return "ramp";
    case ScheduleKind::kPayoffController:
      return "controller";
  }
  return "unknown";
}

PenaltySchedule PenaltySchedule::Constant(double lambda) {
  if (!(lambda >= 0.) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be a finite non-negative number");
  }
  return PenaltySchedule(ScheduleKind::kConstant, lambda);
}

PenaltySchedule PenaltySchedule::LinearRamp(double lambda0, int horizon) {
  PenaltySchedule s = Constant(lambda0);
  if (horizon < 1) throw ConfigError("ramp horizon must be positive");
  s.kind_ = ScheduleKind::kLinearRamp;
  s.horizon_ = horizon;
  return s;
}

PenaltySchedule PenaltySchedule::PayoffController(double lambda0,
                                                  double target,
                                                  double factor) {
  PenaltySchedule s = Constant(lambda0);
  if (!(factor >= 1.)) throw ConfigError("controller factor must be >= 1");
  s.kind_ = ScheduleKind::kPayoffController;
  s.target_ = target;
  s.factor_ = factor;
  return s;
}

double PenaltySchedule::Lambda(int t) const {
  if (kind_ == ScheduleKind::kLinearRamp) {
    return lambda_ * static_cast<double>(t) / horizon_;
  }
  return lambda_;
}

void PenaltySchedule::Update(double projected_payoff) {
  if (kind_ != ScheduleKind::kPayoffController) return;
  if (projected_payoff > target_) {
    lambda_ *= factor_;
  } else {
    lambda_ /= factor_;
  }
}

double PenaltyTerm(double lambda, const KeyedPolicy& mu,
                   const KeyedPolicy& gamma, int stage, int history) {
  if (lambda == 0.) return 0.;
  return lambda * SquaredDistance(mu.At(stage, history),
                                  gamma.At(stage, history));
}

HistoryCosts PenaltyCosts(const InfoIndex& relaxed, const BehavioralPolicy& mu,
                          const InfoIndex& coarse,
                          const BehavioralPolicy& gamma, double lambda,
                          std::span<const int> stages) {
  const ProductGame& game = relaxed.game();
  const KeyedPolicy keyed_mu{relaxed, mu};
  const KeyedPolicy keyed_gamma{coarse, gamma};
  HistoryCosts costs(game.NumStages());
  for (int i : stages) {
    costs[i].resize(game.NumHistories());
    for (int h = 0; h < game.NumHistories(); ++h) {
      costs[i][h] = PenaltyTerm(lambda, keyed_mu, keyed_gamma, i, h);
    }
  }
  return costs;
}

HistoryCosts LinearizedPenalties(const InfoIndex& relaxed,
                                 const BehavioralPolicy& mu,
                                 const InfoIndex& coarse,
                                 const BehavioralPolicy& gamma, double lambda,
                                 std::span<const int> stages) {
  const ProductGame& game = relaxed.game();
  HistoryCosts terms(game.NumStages());
  for (int i : stages) {
    terms[i].resize(game.NumHistories());
    for (int h = 0; h < game.NumHistories(); ++h) {
      const int d = game.ActionAt(h, i);
      terms[i][h] = 2. * lambda *
                    (mu.Local(i, relaxed.LabelId(i, h))[d] -
                     gamma.Local(i, coarse.LabelId(i, h))[d]);
    }
  }
  return terms;
}

LabelActionTable LocalRewardVectors(const InfoIndex& relaxed,
                                    const BehavioralPolicy& mu,
                                    const InfoIndex& coarse,
                                    const BehavioralPolicy& gamma,
                                    double lambda, std::span<const int> stages,
                                    double prefix_floor) {
  return ConditionalActionValues(
      relaxed, mu, stages, prefix_floor,
      PenaltyCosts(relaxed, mu, coarse, gamma, lambda, stages),
      LinearizedPenalties(relaxed, mu, coarse, gamma, lambda, stages));
}

double AuxiliaryCriterion(const InfoIndex& relaxed, const BehavioralPolicy& mu,
                          const InfoIndex& coarse,
                          const BehavioralPolicy& gamma, double lambda,
                          int player) {
  const ProductGame& game = relaxed.game();
  const KeyedPolicy keyed_mu{relaxed, mu};
  const KeyedPolicy keyed_gamma{coarse, gamma};
  const std::vector<int> stages = game.StagesOf(player);
  const std::vector<double> q = Pushforward(relaxed, mu);
  double total = 0.;
  for (int h = 0; h < game.NumHistories(); ++h) {
    if (q[h] == 0.) continue;
    double value = game.Reward(h, player);
    for (int i : stages) {
      value -= PenaltyTerm(lambda, keyed_mu, keyed_gamma, i, h);
    }
    total += q[h] * value;
  }
  return total;
}

ProgressiveHiding::ProgressiveHiding(const InfoIndex& coarse,
                                     const InfoIndex& relaxed, PhConfig config)
    : coarse_(coarse),
      relaxed_(relaxed),
      config_(std::move(config)),
      rng_(MakeRng(config_.seed)),
      stages_(relaxed.game().StagesOf(config_.player)),
      learners_(relaxed, stages_, config_.learner, rng_),
      current_(BehavioralPolicy::Uniform(relaxed)),
      projected_(BehavioralPolicy::Uniform(coarse)) {
  const ProductGame& game = relaxed.game();
  if (!(coarse.game() == game)) {
    throw InvalidArgument("coarse and relaxed maps describe different games");
  }
  if (static_cast<int>(stages_.size()) != game.NumStages()) {
    throw InvalidArgument("player " + std::to_string(config_.player) +
                          " must own every stage");
  }
  if (!(config_.exploration > 0.) || config_.exploration > 1.) {
    throw ConfigError("exploration must lie in (0, 1]");
  }
  if (!(config_.floor > 0.) || config_.floor >= 1.) {
    throw ConfigError("floor must lie in (0, 1)");
  }
  weighted_gamma_.resize(game.NumStages());
  weighted_sq_.resize(game.NumStages());
  for (int i = 0; i < game.NumStages(); ++i) {
    weighted_gamma_[i].assign(
        static_cast<size_t>(coarse.NumLabels(i)) * game.NumActions(i), 0.);
    weighted_sq_[i].assign(coarse.NumLabels(i), 0.);
  }
}

const BehavioralPolicy& ProgressiveHiding::Iterate() {
  const ProductGame& game = relaxed_.game();
  const int t = learners_.iterations() + 1;
  const double lambda = config_.schedule.Lambda(t);

  learners_.Decide(current_);
  const BehavioralPolicy base = MixWithUniform(current_, config_.floor);
  projected_ = Project(coarse_, KeyedPolicy{relaxed_, base},
                       KeyedPolicy{relaxed_, current_});

  const HistoryCosts costs =
      PenaltyCosts(relaxed_, current_, coarse_, projected_, lambda, stages_);
  const HistoryCosts own = LinearizedPenalties(relaxed_, current_, coarse_,
                                               projected_, lambda, stages_);
  if (config_.mode == SamplingMode::kExact) {
    last_theta_ = ConditionalActionValues(relaxed_, current_, stages_,
                                          config_.floor, costs, own);
    for (int i : stages_) {
      const int n = game.NumActions(i);
      for (int g = 0; g < relaxed_.NumLabels(i); ++g) {
        std::span<const double> row(
            last_theta_[i].data() + static_cast<size_t>(g) * n, n);
        learners_.Observe(i, g, row, current_.Local(i, g));
      }
    }
  } else {
    const SampledValues sample = SampleActionValues(
        relaxed_, current_, stages_, config_.exploration, costs, own, rng_);
    last_theta_.assign(game.NumStages(), {});
    for (const SampledStageValue& v : sample.stages) {
      learners_.Observe(v.stage, v.label, v.values,
                        current_.Local(v.stage, v.label));
    }
  }
  learners_.EndIteration();

  const std::vector<double> q = Pushforward(relaxed_, current_);
  double penalty = 0.;
  double payoff_iterate = 0.;
  for (int h = 0; h < game.NumHistories(); ++h) {
    if (q[h] == 0.) continue;
    double cost = 0.;
    for (int i : stages_) cost += costs[i][h];
    penalty += q[h] * cost;
    payoff_iterate += q[h] * game.Reward(h, config_.player);
  }
  realized_auxiliary_ += payoff_iterate - penalty;

  lambda_sum_ += lambda;
  for (int i : stages_) {
    const int n = game.NumActions(i);
    for (int c = 0; c < coarse_.NumLabels(i); ++c) {
      std::span<const double> y = projected_.Local(i, c);
      for (int a = 0; a < n; ++a) {
        weighted_gamma_[i][static_cast<size_t>(c) * n + a] += lambda * y[a];
      }
      weighted_sq_[i][c] += lambda * Dot(y, y);
    }
  }

  IterationRecord record;
  record.t = t;
  record.expected_payoff = ExpectedReward(coarse_, projected_, config_.player);
  record.penalty_mass = penalty;
  record.sum_positive_local_regret = learners_.SumPositiveLocalRegret();
  record.lambda = lambda;
  trace_.push_back(record);
  config_.schedule.Update(record.expected_payoff);

  if (config_.keep_history) {
    iterate_history_.push_back(current_);
    projected_history_.push_back(projected_);
  }
  return projected_;
}

double ProgressiveHiding::AverageAuxiliary(const BehavioralPolicy& mu) const {
  const ProductGame& game = relaxed_.game();
  const int big_t = learners_.iterations();
  if (big_t == 0) return 0.;
  const std::vector<double> q = Pushforward(relaxed_, mu);
  double total = 0.;
  for (int h = 0; h < game.NumHistories(); ++h) {
    if (q[h] == 0.) continue;
    double value = big_t * game.Reward(h, config_.player);
    // sum_t lambda^t ||x - gamma^t_i(c)||^2 from the accumulated statistics.
    for (int i : stages_) {
      const int n = game.NumActions(i);
      const int c = coarse_.LabelId(i, h);
      std::span<const double> x = mu.Local(i, relaxed_.LabelId(i, h));
      std::span<const double> s2(
          weighted_gamma_[i].data() + static_cast<size_t>(c) * n, n);
      value -= lambda_sum_ * Dot(x, x) - 2. * Dot(x, s2) + weighted_sq_[i][c];
    }
    total += q[h] * value;
  }
  return total / big_t;
}

double ProgressiveHiding::AverageRealizedAuxiliary() const {
  const int big_t = learners_.iterations();
  return big_t == 0 ? 0. : realized_auxiliary_ / big_t;
}

RegretReport ProgressiveHiding::Report(long long max_nodes) const {
  const ProductGame& game = relaxed_.game();
  RegretReport report;
  report.iterations = learners_.iterations();
  report.local_regret.resize(game.NumStages());
  for (int i : stages_) {
    for (int g = 0; g < relaxed_.NumLabels(i); ++g) {
      report.local_regret[i].push_back(learners_.LocalRegret(i, g));
    }
  }
  report.sum_positive_local_regret = learners_.SumPositiveLocalRegret();
  for (const IterationRecord& r : trace_) report.average_penalty += r.penalty_mass;
  if (!trace_.empty()) report.average_penalty /= trace_.size();
  report.max_abs_reward = game.MaxAbsReward();
  report.relaxed_perfect_recall = HasPerfectRecall(relaxed_, config_.player);
  report.penalty_bound_holds =
      report.average_penalty <= report.sum_positive_local_regret +
                                    2. * report.max_abs_reward + 1e-9;
  if (report.iterations == 0) {
    report.regret_bound_holds = true;
    return report;
  }

  // For a deterministic mu reaching h, sum_t rho_t charges h the fixed
  // amount T r(h) - sum_i (S1 - 2 S2[c][h_i] + S3[c]).
  const double big_t = report.iterations;
  std::vector<double> values(game.NumHistories());
  for (int h = 0; h < game.NumHistories(); ++h) {
    double value = big_t * game.Reward(h, config_.player);
    for (int i : stages_) {
      const int n = game.NumActions(i);
      const int c = coarse_.LabelId(i, h);
      value -= lambda_sum_ -
               2. * weighted_gamma_[i][static_cast<size_t>(c) * n +
                                       game.ActionAt(h, i)] +
               weighted_sq_[i][c];
    }
    values[h] = value;
  }
  const StageCosts costs;
  try {
    DeterministicOptimum best;
    if (report.relaxed_perfect_recall) {
      best = BackwardInductionOptimum(relaxed_, values, costs);
      report.lower_bound_method = "backward_induction";
    } else {
      best = MaximizeDeterministic(relaxed_, config_.player, current_, values,
                                   costs, max_nodes);
      report.lower_bound_method = "branch_and_bound";
    }
    report.lower_bound_available = true;
    report.regret_lower_bound = best.value / big_t - AverageRealizedAuxiliary();
    report.best_deterministic = std::move(best.policy);
  } catch (const EnumerationTooLarge&) {
    report.lower_bound_available = false;
  }
  report.regret_bound_holds =
      !report.lower_bound_available ||
      report.regret_lower_bound <= report.sum_positive_local_regret + 1e-9;
  return report;
}

}  // namespace phide
