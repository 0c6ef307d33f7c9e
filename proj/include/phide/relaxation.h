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

#ifndef PHIDE_RELAXATION_H_
#define PHIDE_RELAXATION_H_

#include <span>
#include <string>
#include <vector>

#include "phide/info_map.h"
#include "phide/policy.h"

namespace phide {

// Euclidean projection of `point` onto the probability simplex.
std::vector<double> ProjectOntoSimplex(std::span<const double> point);

enum class ProxMode { kBackwardInduction, kCoordinateAscent };
// "backward_induction" | "coordinate_ascent".
ProxMode ParseProxMode(const std::string& name);

// Penalized problem max_mu E_mu[r_p] - lambda ||mu - Proj(mu)||^2 over
// policies keyed by the relaxed map. Distances and projections are weighted
// by the fixed full-support base policy mu0.
class RelaxationProblem {
 public:
  // `base` is keyed by `relaxed` and must have full support; it defaults to
  // the uniform policy. Both indices must outlive the problem.
  RelaxationProblem(const InfoIndex& coarse, const InfoIndex& relaxed,
                    int player, double lambda);
  RelaxationProblem(const InfoIndex& coarse, const InfoIndex& relaxed,
                    int player, double lambda, const BehavioralPolicy& base);

  const InfoIndex& coarse() const { return coarse_; }
  const InfoIndex& relaxed() const { return relaxed_; }
  int player() const { return player_; }
  double lambda() const { return lambda_; }
  const std::vector<int>& stages() const { return stages_; }
  const std::vector<double>& base_mass() const { return base_mass_; }

  // Proj_{mu0}(mu), keyed by the coarse map.
  BehavioralPolicy Project(const BehavioralPolicy& mu) const;
  // ||mu - gamma||^2 weighted by mu0 over the player's stages.
  double Distance(const BehavioralPolicy& mu,
                  const BehavioralPolicy& gamma) const;
  // E_mu[r_p] - lambda * Distance(mu, Proj(mu)).
  double Lagrangian(const BehavioralPolicy& mu) const;
  // E_mu[r_p] - lambda * Distance(mu, gamma).
  double ProximalObjective(const BehavioralPolicy& mu,
                           const BehavioralPolicy& gamma) const;
  // gamma keyed by the coarse map, re-keyed by the relaxed map.
  BehavioralPolicy Lift(const BehavioralPolicy& gamma) const;

 private:
  const InfoIndex& coarse_;
  const InfoIndex& relaxed_;
  int player_;
  double lambda_;
  std::vector<int> stages_;
  std::vector<double> base_mass_;
};

struct ProximalResult {
  BehavioralPolicy policy;
  int sweeps = 0;
  // False when the sweep cap was hit before the improvement fell below the
  // tolerance.
  bool converged = false;
};

// Maximizes ProximalObjective(., gamma) by exact block updates: for a label
// g of stage i, the objective is <A, x> - lambda w(g) ||x - gamma_i(c(g))||^2
// in x = mu_i(g), solved by a simplex projection. Backward-induction mode
// sweeps the stages in reverse order and requires perfect recall of the
// relaxed map; coordinate-ascent mode sweeps forward without that check.
// Sweeps start from `warm_start` (the lifted gamma when null) and stop once a
// sweep improves the objective by less than `tolerance`.
ProximalResult ProximalStep(const RelaxationProblem& problem,
                            const BehavioralPolicy& gamma, ProxMode mode,
                            const BehavioralPolicy* warm_start = nullptr,
                            int max_sweeps = 1000, double tolerance = 1e-13);

struct RirResult {
  BehavioralPolicy mu;
  BehavioralPolicy gamma;
  // Lagrangian of the initial policy followed by one entry per round.
  std::vector<double> lagrangian;
  bool all_converged = true;
};

// Resolution by information relaxation: T rounds of gamma <- Proj(mu);
// mu <- ProximalStep(gamma), each warm-started at the previous mu.
RirResult RunRelaxation(const RelaxationProblem& problem,
                        const BehavioralPolicy& initial, int rounds,
                        ProxMode mode);

}  // namespace phide

#endif  // PHIDE_RELAXATION_H_
