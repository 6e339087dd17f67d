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

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>

namespace qaoa {

inline constexpr double kDefaultEta = 20.0;

struct GibbsObjective {
  double eta = kDefaultEta;
};
struct EnergyObjective {};
struct LowEnergyObjective {
  std::optional<double> e0;  // defaults to 0.95 * e_gs
};

using ObjectiveSpec = std::variant<GibbsObjective, EnergyObjective, LowEnergyObjective>;

void validate(const ObjectiveSpec& spec);
void validate_eta(double eta);

struct NoiseModel {
  double p_noise = 0.0;

  explicit NoiseModel(double p) : p_noise(p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise probability must lie in [0, 1]");
  }
};

struct CumulantReport {
  double mu = 0.0;
  double sigma2 = 0.0;
  double kappa3 = 0.0;
};

namespace detail {

template <typename DerivedP, typename Real>
void check_aligned(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table) {
  if (static_cast<std::size_t>(probs.size()) != table.size())
    throw std::invalid_argument("probability and energy tables differ in length");
}

inline void check_eta(double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
}

// sum_z p(z) exp(-eta (E(z) - shift)).
template <typename DerivedP, typename Real>
double shifted_boltzmann_mean(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table,
                              double eta, double shift) {
  double total = 0.0;
  for (Eigen::Index z = 0; z < probs.size(); ++z)
    total += static_cast<double>(probs[z]) * std::exp(-eta * (static_cast<double>(table.energies[z]) - shift));
  return total;
}

}  // namespace detail

/// f = -log <exp(-eta E)>, evaluated as eta E_min - log <exp(-eta (E - E_min))>
/// with E_min the minimum over the support of `probs`. Every retained term is
/// at most 1 and the largest is 1, so the sum neither overflows nor vanishes.
template <typename DerivedP, typename Real>
double gibbs_objective(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table, double eta) {
  detail::check_aligned(probs, table);
  if (eta == 0.0) return 0.0;
  detail::check_eta(eta);
  double e_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index z = 0; z < probs.size(); ++z)
    if (probs[z] > 0) e_min = std::min(e_min, static_cast<double>(table.energies[z]));
  if (!std::isfinite(e_min)) throw std::invalid_argument("probability table has no mass");
  return eta * e_min - std::log(detail::shifted_boltzmann_mean(probs, table, eta, e_min));
}

/// Literal -log sum p exp(-eta E); overflows for large eta. Reference path only.
template <typename DerivedP, typename Real>
double gibbs_objective_naive(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table,
                             double eta) {
  detail::check_aligned(probs, table);
  return -std::log(detail::shifted_boltzmann_mean(probs, table, eta, 0.0));
}

template <typename DerivedP, typename Real>
double energy_expectation(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table) {
  detail::check_aligned(probs, table);
  double total = 0.0;
  for (Eigen::Index z = 0; z < probs.size(); ++z)
    total += static_cast<double>(probs[z]) * static_cast<double>(table.energies[z]);
  return total;
}

/// P(E < e0), strict.
template <typename DerivedP, typename Real>
double prob_low_energy(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table, double e0) {
  detail::check_aligned(probs, table);
  double total = 0.0;
  for (Eigen::Index z = 0; z < probs.size(); ++z)
    if (static_cast<double>(table.energies[z]) < e0) total += static_cast<double>(probs[z]);
  return total;
}

/// 1 / (e0 - e_gs).
double eta_estimate(double e0, double e_gs);

struct MarkovBound {
  double lhs;  // P(E < e0)
  double rhs;  // <exp(-eta (E - e0))>
};

template <typename DerivedP, typename Real>
MarkovBound markov_bound_gap(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table,
                             double eta, double e0) {
  detail::check_aligned(probs, table);
  detail::check_eta(eta);
  return {prob_low_energy(probs, table, e0), detail::shifted_boltzmann_mean(probs, table, eta, e0)};
}

template <typename DerivedP, typename Real>
CumulantReport cumulants(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table) {
  const double mu = energy_expectation(probs, table);
  double m2 = 0.0, m3 = 0.0;
  for (Eigen::Index z = 0; z < probs.size(); ++z) {
    const double d = static_cast<double>(table.energies[z]) - mu;
    m2 += static_cast<double>(probs[z]) * d * d;
    m3 += static_cast<double>(probs[z]) * d * d * d;
  }
  return {mu, std::max(0.0, m2), m3};
}

/// Gibbs objective of the depolarized distribution (1 - p) probs + p / 2^n.
template <typename DerivedP, typename Real>
double noisy_gibbs(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table, double eta,
                   const NoiseModel& noise) {
  if (noise.p_noise == 0.0) return gibbs_objective(probs, table, eta);
  detail::check_aligned(probs, table);
  detail::check_eta(eta);
  const double e_min = static_cast<double>(table.energies.minCoeff());
  const double uniform = 1.0 / static_cast<double>(table.size());
  double total = 0.0;
  for (Eigen::Index z = 0; z < probs.size(); ++z) {
    const double mixed = (1.0 - noise.p_noise) * static_cast<double>(probs[z]) + noise.p_noise * uniform;
    total += mixed * std::exp(-eta * (static_cast<double>(table.energies[z]) - e_min));
  }
  return eta * e_min - std::log(total);
}

/// Same quantity as noisy_gibbs through the correction to the ideal objective:
/// f_ideal - log(1 - p (<w>_psi - Tr w / 2^n) / <w>_psi), w = exp(-eta E).
template <typename DerivedP, typename Real>
double noisy_gibbs_correction(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table,
                              double eta, const NoiseModel& noise) {
  const double f_ideal = gibbs_objective(probs, table, eta);
  // The ratio below is invariant under a common shift of E.
  const double e_min = static_cast<double>(table.energies.minCoeff());
  const double ideal = detail::shifted_boltzmann_mean(probs, table, eta, e_min);
  double trace = 0.0;
  for (Eigen::Index z = 0; z < table.energies.size(); ++z)
    trace += std::exp(-eta * (static_cast<double>(table.energies[z]) - e_min));
  const double uniform_mean = trace / static_cast<double>(table.size());
  return f_ideal - std::log1p(-noise.p_noise * (ideal - uniform_mean) / ideal);
}

/// P_ideal - p (P_ideal - P_uni).
double noisy_prob(double p_ideal, double p_uniform, double p_noise);

/// Root of <E exp(-eta E)> / <exp(-eta E)> = e0 in eta, by bisection. The left
/// side decreases monotonically from <E> toward the minimum supported energy,
/// so a root exists only for e0 strictly between the two; otherwise nullopt.
template <typename DerivedP, typename Real>
std::optional<double> optimal_eta(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table,
                                  double e0, double eta_max = 1e6) {
  detail::check_aligned(probs, table);
  double e_min = std::numeric_limits<double>::infinity();
  for (Eigen::Index z = 0; z < probs.size(); ++z)
    if (probs[z] > 0) e_min = std::min(e_min, static_cast<double>(table.energies[z]));
  const auto tilted_mean = [&](double eta) {
    double num = 0.0, den = 0.0;
    for (Eigen::Index z = 0; z < probs.size(); ++z) {
      const double e = static_cast<double>(table.energies[z]);
      const double w = static_cast<double>(probs[z]) * std::exp(-eta * (e - e_min));
      num += w * e;
      den += w;
    }
    return num / den;
  };
  if (!(tilted_mean(0.0) > e0) || !(tilted_mean(eta_max) < e0)) return std::nullopt;
  double lo = 0.0, hi = eta_max;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (tilted_mean(mid) > e0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Objective precomputed against an instance's energy table for repeated
/// evaluation on the flip-symmetric half space: value = offset + transform(<w>).
class ObjectiveFunction {
 public:
  ObjectiveFunction(const EnergyTable& instance_table, const ObjectiveSpec& spec, double e_gs);

  const ObjectiveSpec& spec() const { return spec_; }
  /// Weights over basis states with the top qubit in |0>.
  const Eigen::VectorXd& half_weights() const { return weights_; }
  /// Objective value from the full-space mean of the weights.
  double from_mean(double mean) const;

 private:
  ObjectiveSpec spec_;
  Eigen::VectorXd weights_;
  double shift_ = 0.0;
};

}  // namespace qaoa
