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

#include "qaoa/search.hpp"

#include "qaoa/analytics.hpp"
#include "qaoa/parallel.hpp"
#include "qaoa/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace qaoa {

std::string scoring_name(const ScoringPrescription& scoring) {
  static constexpr const char* kNames[] = {"nm", "estimated", "fixed", "random", "energy-approx"};
  return kNames[scoring.index()];
}

void SearchConfig::validate(int num_edges) const {
  if (beam_width < 1) throw std::invalid_argument("beam width must be at least 1");
  if (max_removals < 0 || max_removals > num_edges)
    throw std::invalid_argument("max removals must lie in [0, edge count]");
  if (const auto* nm = std::get_if<NelderMeadScore>(&scoring)) {
    nm->simplex.validate(2);
    validate_eta(nm->eta);
  }
  if (const auto* est = std::get_if<EstimatedParamsScore>(&scoring)) validate_eta(est->eta);
  if (const auto* fixed = std::get_if<FixedParamsScore>(&scoring)) validate_eta(fixed->eta);
}

double visited_bound(int beam_width, int max_removals, int num_edges) {
  return beam_width * (max_removals + 1.0) * (num_edges - max_removals / 2.0);
}

std::vector<EdgeMask> expand(std::span<const EdgeMask> survivors) {
  std::vector<EdgeMask> children;
  for (const auto& mask : survivors) {
    if (!survivors.empty() && mask.removed() != survivors.front().removed())
      throw std::invalid_argument("survivors must share one search level");
    for (int e = 0; e < mask.size(); ++e)
      if (mask.test(e)) children.push_back(mask.without(e));
  }
  std::sort(children.begin(), children.end());
  children.erase(std::unique(children.begin(), children.end()), children.end());
  return children;
}

namespace {

ScoredAnsatz simulate_at(const ProblemContext& context, const EdgeMask& mask, double eta, double beta,
                         double gamma) {
  AnsatzEvaluator evaluator(context, mask);
  const auto objective = context.objective(GibbsObjective{eta});
  const double f = evaluator.objective(objective, CircuitParams::single(beta, gamma));
  return {mask, f, beta, gamma, 1, true};
}

// An ansatz without couplings has no preferred angle; gamma = 0 leaves the uniform state.
double estimated_gamma_or_zero(const AnsatzGraph& ansatz) {
  for (int e = 0; e < ansatz.instance().num_edges(); ++e)
    if (ansatz.effective_coupling(e) != 0.0) return estimated_gamma(ansatz);
  return 0.0;
}

}  // namespace

ScoredAnsatz score(const ProblemContext& context, const EdgeMask& mask, const ScoringPrescription& scoring,
                   std::uint64_t search_seed) {
  const AnsatzGraph ansatz(context.instance(), mask);
  return std::visit(
      [&](const auto& rule) -> ScoredAnsatz {
        using Rule = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<Rule, NelderMeadScore>) {
          const auto opt = optimize_parameters(context, mask, GibbsObjective{rule.eta}, rule.simplex, search_seed);
          return {mask, opt.objective, opt.params.betas[0], opt.params.gammas[0], opt.evals, opt.converged};
        } else if constexpr (std::is_same_v<Rule, EstimatedParamsScore>) {
          return simulate_at(context, mask, rule.eta, kBetaStar, estimated_gamma_or_zero(ansatz));
        } else if constexpr (std::is_same_v<Rule, FixedParamsScore>) {
          return simulate_at(context, mask, rule.eta, kBetaStar, rule.gamma);
        } else if constexpr (std::is_same_v<Rule, RandomScore>) {
          Rng rng(mix_seed(rule.seed, mask.bits()));
          return {mask, uniform_unit(rng), std::nullopt, std::nullopt, 0, true};
        } else {
          const double gamma = estimated_gamma_or_zero(ansatz);
          return {mask, analytic_energy_cubic(ansatz, kBetaStar, gamma).value, kBetaStar, gamma, 0, true};
        }
      },
      scoring);
}

namespace {

std::vector<ScoredAnsatz> score_all(const ProblemContext& context, const std::vector<EdgeMask>& masks,
                                    const SearchConfig& config) {
  std::vector<ScoredAnsatz> scored(masks.size());
  parallel_for(masks.size(), [&](std::size_t i) { scored[i] = score(context, masks[i], config.scoring, config.seed); });
  return scored;
}

void select_best(std::vector<ScoredAnsatz>& scored, int beam_width) {
  std::sort(scored.begin(), scored.end(), [](const ScoredAnsatz& a, const ScoredAnsatz& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.mask < b.mask;
  });
  if (scored.size() > static_cast<std::size_t>(beam_width)) scored.resize(static_cast<std::size_t>(beam_width));
}

}  // namespace

SearchTrace run_search(const ProblemContext& context, const SearchConfig& config) {
  const auto& instance = context.instance();
  config.validate(instance.num_edges());

  SearchTrace trace{config.scoring, config.beam_width, {}, 0};
  std::vector<EdgeMask> candidates{instance.full_mask()};
  for (int level = 0; level <= config.max_removals; ++level) {
    auto scored = score_all(context, candidates, config);
    SearchLevel record{level, scored.size(), {}};
    if (level > 0) trace.visited += scored.size();
    select_best(scored, config.beam_width);
    record.survivors = std::move(scored);
    trace.levels.push_back(std::move(record));
    if (level == config.max_removals) break;

    std::vector<EdgeMask> survivors;
    for (const auto& s : trace.levels.back().survivors) survivors.push_back(s.mask);
    candidates = expand(survivors);
    if (candidates.empty()) break;
  }
  return trace;
}

double reference_probability(const ProblemContext& context, const EvaluationConfig& config) {
  const auto full = context.instance().full_mask();
  const auto opt = optimize_parameters(context, full, GibbsObjective{config.eta}, config.simplex, config.seed);
  AnsatzEvaluator evaluator(context, full);
  return evaluator.measure(context.low_energy_weights(), opt.params).p_low;
}

namespace {

struct Reoptimized {
  ParamOptimization opt;
  double p_low = 0.0;
};

Reoptimized reoptimize(const ProblemContext& context, const EdgeMask& mask, const EvaluationConfig& config) {
  auto opt = optimize_parameters(context, mask, GibbsObjective{config.eta}, config.simplex, config.seed);
  AnsatzEvaluator evaluator(context, mask);
  const double p_low = evaluator.measure(context.low_energy_weights(), opt.params).p_low;
  return {std::move(opt), p_low};
}

double scaled(double p, double reference) { return reference > 0.0 ? p / reference : 0.0; }

}  // namespace

FinalEvaluation final_evaluation(const ProblemContext& context, const SearchTrace& trace,
                                 const EvaluationConfig& config) {
  if (trace.levels.empty()) throw std::invalid_argument("cannot evaluate an empty search trace");
  FinalEvaluation out;
  out.p_reference = reference_probability(context, config);
  out.levels.resize(trace.levels.size());
  parallel_for(trace.levels.size(), [&](std::size_t i) {
    const auto& best = trace.levels[i].survivors.front();
    const auto re = reoptimize(context, best.mask, config);
    auto& rec = out.levels[i];
    rec.level = trace.levels[i].level;
    rec.mask = best.mask;
    rec.gibbs = re.opt.objective;
    rec.beta = re.opt.params.betas[0];
    rec.gamma = re.opt.params.gammas[0];
    rec.p_low = re.p_low;
    rec.scaled_p = scaled(re.p_low, out.p_reference);
    rec.converged = re.opt.converged;
    if (best.beta && best.gamma) {
      AnsatzEvaluator evaluator(context, best.mask);
      const double p = evaluator.measure(context.low_energy_weights(), CircuitParams::single(*best.beta, *best.gamma)).p_low;
      rec.p_low_at_scoring = p;
      rec.scaled_p_at_scoring = scaled(p, out.p_reference);
    }
  });
  for (std::size_t i = 1; i < out.levels.size(); ++i)
    if (out.levels[i].gibbs < out.levels[static_cast<std::size_t>(out.best_level)].gibbs)
      out.best_level = static_cast<int>(i);
  return out;
}

RerankResult top_k_reranking(const ProblemContext& context, const SearchTrace& trace, std::size_t k,
                             const EvaluationConfig& config) {
  if (trace.levels.empty()) throw std::invalid_argument("cannot rerank an empty search trace");
  const auto& survivors = trace.levels.back().survivors;
  RerankResult out;
  out.k_used = std::min(k, survivors.size());
  if (out.k_used == 0) throw std::invalid_argument("reranking needs k >= 1");
  const double reference = reference_probability(context, config);
  out.scaled_p.resize(out.k_used);
  parallel_for(out.k_used, [&](std::size_t i) {
    out.scaled_p[i] = scaled(reoptimize(context, survivors[i].mask, config).p_low, reference);
  });
  const auto best = std::max_element(out.scaled_p.begin(), out.scaled_p.end());
  out.best_scaled_p = *best;
  out.best_mask = survivors[static_cast<std::size_t>(best - out.scaled_p.begin())].mask;
  return out;
}

}  // namespace qaoa
