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

#include "qaoa/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace qaoa {

void validate(const ObjectiveSpec& spec) {
  if (const auto* gibbs = std::get_if<GibbsObjective>(&spec)) detail::check_eta(gibbs->eta);
}

void validate_eta(double eta) { detail::check_eta(eta); }

double eta_estimate(double e0, double e_gs) {
  if (!(e0 > e_gs)) throw std::invalid_argument("eta estimate needs e0 > e_gs");
  return 1.0 / (e0 - e_gs);
}

double noisy_prob(double p_ideal, double p_uniform, double p_noise) {
  for (const double p : {p_ideal, p_uniform, p_noise})
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probabilities must lie in [0, 1]");
  return p_ideal - p_noise * (p_ideal - p_uniform);
}

ObjectiveFunction::ObjectiveFunction(const EnergyTable& instance_table, const ObjectiveSpec& spec, double e_gs)
    : spec_(spec) {
  validate(spec);
  if (instance_table.n_qubits < 1) throw std::invalid_argument("objective needs at least one qubit");
  const auto half = static_cast<Eigen::Index>(instance_table.size() / 2);
  const auto energies = instance_table.energies.head(half);
  if (const auto* gibbs = std::get_if<GibbsObjective>(&spec_)) {
    shift_ = e_gs;
    weights_ = (-gibbs->eta * (energies.array() - e_gs)).exp().matrix();
  } else if (std::holds_alternative<EnergyObjective>(spec_)) {
    weights_ = energies;
  } else {
    const double e0 = std::get<LowEnergyObjective>(spec_).e0.value_or(kLowEnergyFraction * e_gs);
    weights_ = (energies.array() < e0).cast<double>().matrix();
  }
}

double ObjectiveFunction::from_mean(double mean) const {
  return std::visit(
      [&](const auto& kind) -> double {
        using Kind = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<Kind, GibbsObjective>) {
          return kind.eta * shift_ - std::log(mean);
        } else if constexpr (std::is_same_v<Kind, EnergyObjective>) {
          return mean;
        } else {
          return -mean;
        }
      },
      spec_);
}

}  // namespace qaoa
