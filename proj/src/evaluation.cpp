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

#include "qaoa/evaluation.hpp"

#include "qaoa/random.hpp"

namespace qaoa {

namespace {

EnergyTable checked_table(const ProblemInstance& instance) {
  if (instance.num_qubits() < 2) throw std::invalid_argument("instance needs at least two qubits");
  return build_energy_table(instance);
}

}  // namespace

ProblemContext::ProblemContext(ProblemInstance instance)
    : instance_(std::move(instance)),
      table_(checked_table(instance_)),
      ground_(exact_ground_state(table_)),
      low_energy_(table_, LowEnergyObjective{ground_.e_cutoff}, ground_.e_gs),
      energy_(table_, EnergyObjective{}, ground_.e_gs) {}

double ProblemContext::uniform_low_energy_probability() const {
  return low_energy_.half_weights().mean();
}

std::optional<ParamOptimization> ProblemContext::recall(const MemoKey& key) const {
  std::lock_guard lock(memo_mutex_);
  const auto it = memo_.find(key);
  if (it == memo_.end()) return std::nullopt;
  return it->second;
}

void ProblemContext::remember(const MemoKey& key, const ParamOptimization& value) const {
  std::lock_guard lock(memo_mutex_);
  memo_.emplace(key, value);
}

AnsatzEvaluator::AnsatzEvaluator(const ProblemContext& context, EdgeMask mask)
    : context_(&context), mask_(mask), simulator_(AnsatzGraph(context.instance(), mask)) {}

double AnsatzEvaluator::objective(const ObjectiveFunction& objective, const CircuitParams& params) {
  simulator_.run(params);
  return objective.from_mean(simulator_.expectation(objective.half_weights()));
}

Measurement AnsatzEvaluator::measure(const ObjectiveFunction& objective, const CircuitParams& params) {
  simulator_.run(params);
  return {objective.from_mean(simulator_.expectation(objective.half_weights())),
          simulator_.expectation(context_->energy_weights().half_weights()),
          simulator_.expectation(context_->low_energy_weights().half_weights())};
}

std::uint64_t optimizer_seed(std::uint64_t run_seed, const EdgeMask& mask) {
  return mix_seed(run_seed, mask.bits());
}

namespace {

ProblemContext::MemoKey memo_key(const EdgeMask& mask, const ObjectiveSpec& spec, const SimplexConfig& simplex,
                                 std::uint64_t seed, int depth, double e_gs) {
  double parameter = 0.0;
  if (const auto* g = std::get_if<GibbsObjective>(&spec)) parameter = g->eta;
  if (const auto* l = std::get_if<LowEnergyObjective>(&spec)) parameter = l->e0.value_or(kLowEnergyFraction * e_gs);
  return {mask.bits(), spec.index(), parameter, simplex, seed, depth};
}

}  // namespace

ParamOptimization optimize_parameters(const ProblemContext& context, const EdgeMask& mask,
                                      const ObjectiveSpec& spec, const SimplexConfig& simplex,
                                      std::uint64_t run_seed, int depth) {
  if (depth < 1) throw std::invalid_argument("circuit depth must be at least 1");
  const std::uint64_t seed = optimizer_seed(run_seed, mask);
  const auto key = memo_key(mask, spec, simplex, seed, depth, context.ground_state().e_gs);
  if (auto cached = context.recall(key)) return *cached;

  const auto objective = context.objective(spec);
  AnsatzEvaluator evaluator(context, mask);
  const auto result = nelder_mead(
      [&](const Eigen::VectorXd& x) { return evaluator.objective(objective, CircuitParams::from_vector(x)); },
      2 * depth, simplex, seed);
  ParamOptimization out{CircuitParams::from_vector(result.best_params), result.best_value, result.converged,
                        result.evals_used};
  context.remember(key, out);
  return out;
}

std::shared_ptr<const ProblemContext> ContextCache::get(const GraphKind& kind, std::uint64_t seed) {
  const auto key = std::make_pair(to_string(kind), seed);
  {
    std::lock_guard lock(mutex_);
    if (const auto it = contexts_.find(key); it != contexts_.end()) return it->second;
  }
  // Built outside the lock; a concurrent duplicate is discarded below.
  auto context = std::make_shared<const ProblemContext>(sample_instance(kind, seed));
  std::lock_guard lock(mutex_);
  return contexts_.emplace(key, std::move(context)).first->second;
}

}  // namespace qaoa
