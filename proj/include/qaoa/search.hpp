// Copyright 2026 The qaoa-aas Authors
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

#pragma once

#include "qaoa/evaluation.hpp"
#include "qaoa/instances.hpp"
#include "qaoa/objectives.hpp"
#include "qaoa/optimizer.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qaoa {

/// Optimize (beta, gamma) with Nelder-Mead; score = minimized Gibbs objective.
struct NelderMeadScore {
  SimplexConfig simplex;
  double eta = kDefaultEta;
};
/// One simulation at (pi/8, estimated_gamma(ansatz)); score = Gibbs objective.
struct EstimatedParamsScore {
  double eta = kDefaultEta;
};
/// One simulation at (pi/8, gamma); score = Gibbs objective.
struct FixedParamsScore {
  double gamma = 0.0;
  double eta = kDefaultEta;
};
/// Pseudo-random number in [0, 1) derived from (seed, mask); no simulation.
struct RandomScore {
  std::uint64_t seed = 0;
};
/// Cubic-truncated closed-form energy at (pi/8, estimated_gamma); no simulation.
struct EnergyApproxScore {};

using ScoringPrescription =
    std::variant<NelderMeadScore, EstimatedParamsScore, FixedParamsScore, RandomScore, EnergyApproxScore>;

/// CLI name: nm, estimated, fixed, random, energy-approx.
std::string scoring_name(const ScoringPrescription& scoring);

struct SearchConfig {
  int beam_width = 1;
  int max_removals = 20;
  ScoringPrescription scoring = NelderMeadScore{};
  std::uint64_t seed = 0;

  void validate(int num_edges) const;
};

struct ScoredAnsatz {
  EdgeMask mask;
  double score = 0.0;
  // Circuit parameters the score was computed at; absent for RandomScore.
  std::optional<double> beta;
  std::optional<double> gamma;
  int evals = 0;
  bool converged = true;
};

struct SearchLevel {
  int level = 0;
  std::size_t candidates_scored = 0;
  std::vector<ScoredAnsatz> survivors;  // best first
};

struct SearchTrace {
  ScoringPrescription scoring;
  int beam_width = 1;
  std::vector<SearchLevel> levels;
  /// Architectures generated by expansion (levels 1..n_max); the level-0 root is
  /// the fixed starting point and is not counted.
  std::size_t visited = 0;
};

/// Upper bound w (n + 1)(m - n / 2) on `visited` for n removals from m edges.
double visited_bound(int beam_width, int max_removals, int num_edges);

/// Every distinct mask obtained by clearing one set bit of a survivor, in canonical order.
std::vector<EdgeMask> expand(std::span<const EdgeMask> survivors);

ScoredAnsatz score(const ProblemContext& context, const EdgeMask& mask, const ScoringPrescription& scoring,
                   std::uint64_t search_seed);

/// Level-wise expansion, scoring and selection of the w lowest scores (ties by
/// canonical mask order), starting from the full instance graph at level 0.
SearchTrace run_search(const ProblemContext& context, const SearchConfig& config);

struct EvaluationConfig {
  double eta = kDefaultEta;
  SimplexConfig simplex;
  std::uint64_t seed = 0;
};

struct LevelEvaluation {
  int level = 0;
  EdgeMask mask;
  double gibbs = 0.0;  // after re-optimization
  double beta = 0.0;
  double gamma = 0.0;
  double p_low = 0.0;
  double scaled_p = 0.0;
  bool converged = false;
  // At the parameters used for scoring, without re-optimization.
  std::optional<double> p_low_at_scoring;
  std::optional<double> scaled_p_at_scoring;
};

struct FinalEvaluation {
  double p_reference = 0.0;  // full graph, Gibbs-optimized
  std::vector<LevelEvaluation> levels;
  int best_level = 0;  // lowest re-optimized Gibbs objective
};

/// P(E < cutoff) of the full instance graph with Gibbs-optimized parameters:
/// the denominator of the scaled probability.
double reference_probability(const ProblemContext& context, const EvaluationConfig& config);

/// Re-optimizes the best ansatz of every level under the Gibbs objective and
/// reports its probability of low energy, raw and scaled by the reference.
FinalEvaluation final_evaluation(const ProblemContext& context, const SearchTrace& trace,
                                 const EvaluationConfig& config);

struct RerankResult {
  std::size_t k_used = 0;
  double best_scaled_p = 0.0;
  EdgeMask best_mask;
  std::vector<double> scaled_p;  // per candidate, in score order
};

/// Re-optimizes the k best-scored survivors of the last level and returns the
/// largest scaled probability among them. k is clamped to the survivor count.
RerankResult top_k_reranking(const ProblemContext& context, const SearchTrace& trace, std::size_t k,
                             const EvaluationConfig& config);

}  // namespace qaoa
