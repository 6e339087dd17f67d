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

#include "qaoa/instances.hpp"
#include "qaoa/objectives.hpp"
#include "qaoa/optimizer.hpp"
#include "qaoa/simulator.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

namespace qaoa {

/// What one simulated circuit tells us about the instance Hamiltonian.
struct Measurement {
  double objective = 0.0;
  double energy = 0.0;
  double p_low = 0.0;  // P(E < 0.95 e_gs)
};

struct ParamOptimization {
  CircuitParams params = CircuitParams::single(0.0, 0.0);
  double objective = 0.0;
  bool converged = false;
  int evals = 0;
};

/// Per-instance state shared by every evaluation: the full energy table, the
/// exact ground state, and a memo of parameter optimizations keyed by
/// (mask, objective, optimizer settings, seed). Thread-safe.
class ProblemContext {
 public:
  explicit ProblemContext(ProblemInstance instance);
  ProblemContext(const ProblemContext&) = delete;
  ProblemContext& operator=(const ProblemContext&) = delete;

  const ProblemInstance& instance() const { return instance_; }
  const EnergyTable& energies() const { return table_; }
  const GroundStateInfo& ground_state() const { return ground_; }
  double cutoff() const { return ground_.e_cutoff; }

  ObjectiveFunction objective(const ObjectiveSpec& spec) const {
    return ObjectiveFunction(table_, spec, ground_.e_gs);
  }
  const ObjectiveFunction& low_energy_weights() const { return low_energy_; }
  const ObjectiveFunction& energy_weights() const { return energy_; }

  /// P(E < cutoff) under the uniform distribution over bit strings.
  double uniform_low_energy_probability() const;

  struct MemoKey {
    std::uint64_t mask = 0;
    std::size_t objective_kind = 0;
    double objective_parameter = 0.0;
    SimplexConfig simplex;
    std::uint64_t seed = 0;
    int depth = 1;
    auto operator<=>(const MemoKey&) const = default;
  };
  std::optional<ParamOptimization> recall(const MemoKey& key) const;
  void remember(const MemoKey& key, const ParamOptimization& value) const;

 private:
  ProblemInstance instance_;
  EnergyTable table_;
  GroundStateInfo ground_;
  ObjectiveFunction low_energy_;
  ObjectiveFunction energy_;
  mutable std::mutex memo_mutex_;
  mutable std::map<MemoKey, ParamOptimization> memo_;
};

/// Contexts keyed by (graph kind, instance seed), so that separate runs over the
/// same instances share energy tables and optimization memos. Thread-safe.
class ContextCache {
 public:
  std::shared_ptr<const ProblemContext> get(const GraphKind& kind, std::uint64_t seed);

 private:
  std::mutex mutex_;
  std::map<std::pair<std::string, std::uint64_t>, std::shared_ptr<const ProblemContext>> contexts_;
};

/// Simulates one ansatz of an instance and measures it against the instance
/// Hamiltonian. Holds simulation buffers, so each thread needs its own.
class AnsatzEvaluator {
 public:
  AnsatzEvaluator(const ProblemContext& context, EdgeMask mask);

  const EdgeMask& mask() const { return mask_; }
  double objective(const ObjectiveFunction& objective, const CircuitParams& params);
  Measurement measure(const ObjectiveFunction& objective, const CircuitParams& params);

 private:
  const ProblemContext* context_;
  EdgeMask mask_;
  FlipSymmetricSimulator<double> simulator_;
};

/// Seed of the parameter optimization of `mask` within a run seeded by `run_seed`.
std::uint64_t optimizer_seed(std::uint64_t run_seed, const EdgeMask& mask);

/// Nelder-Mead over the 2p circuit parameters of the ansatz `mask`, seeded with
/// optimizer_seed(run_seed, mask). Results are memoized in the context.
ParamOptimization optimize_parameters(const ProblemContext& context, const EdgeMask& mask,
                                      const ObjectiveSpec& spec, const SimplexConfig& simplex,
                                      std::uint64_t run_seed, int depth = 1);

}  // namespace qaoa
