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
#include "qaoa/simulator.hpp"

#include <cstdint>
#include <numbers>
#include <string>

namespace qaoa {

/// beta* that maximizes |sin 4 beta|.
inline constexpr double kBetaStar = std::numbers::pi / 8.0;

enum class ParamMethod { Estimated, Fixed };

struct ParamEstimate {
  double beta_star = kBetaStar;
  double gamma_star = 0.0;
  ParamMethod method = ParamMethod::Estimated;
};

/// A closed-form value; `approximate` is set when the retained graph has a
/// triangle, where the formula is no longer exact.
struct AnalyticValue {
  double value = 0.0;
  bool approximate = false;
};

/// True when no two retained edges sharing a vertex close a triangle with a third.
bool is_triangle_free(const AnsatzGraph& ansatz);

/// Exact p = 1 energy for triangle-free retained graphs:
///   <E> = (sin 4b / 2) sum_{(i,j)} J_ij sin(2 g J_ij) [prod_{k in N(i)\j} cos(2 g J_ik)
///                                                   + prod_{k in N(j)\i} cos(2 g J_jk)],
/// with removed edges acting as J = 0. Summed over unordered edges this is the
/// ordered-pair form sin 4b sum J_ij tan(2 g J_ij) prod_{k in N(j)} cos(2 g J_kj) / 2.
AnalyticValue analytic_energy(const AnsatzGraph& ansatz, double beta, double gamma);

/// Power sums that define the cubic truncation in gamma.
struct CouplingMoments {
  double sum_j2 = 0.0;     // sum over retained edges of J^2
  double sum_j4 = 0.0;     // sum over retained edges of J^4
  double path_sum = 0.0;   // sum over unordered length-2 paths k-i-j of J_ki^2 J_ij^2
};

CouplingMoments coupling_moments(const AnsatzGraph& ansatz);

/// analytic_energy expanded to third order in gamma:
///   sin 4b [2 A g - (4/3)(B + 3 Q) g^3],  A = sum J^2, B = sum J^4, Q = path_sum.
AnalyticValue analytic_energy_cubic(const AnsatzGraph& ansatz, double beta, double gamma);

/// Negative minimizer of the cubic truncation at beta = pi/8:
///   gamma* = -sqrt(A / (6 (Q + B / 3))).
/// Throws when every retained coupling is zero.
double estimated_gamma(const AnsatzGraph& ansatz);

ParamEstimate estimated_params(const AnsatzGraph& ansatz);

struct GammaCalibration {
  GraphKind kind;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  double gamma_median = 0.0;
};

/// Median of estimated_gamma on the full graph over n_samples independent
/// coupling draws (sample i seeded with mix_seed(seed, i)).
GammaCalibration fixed_gamma_calibration(const GraphKind& kind, std::size_t n_samples, std::uint64_t seed);

inline constexpr std::size_t kCalibrationSamples = 100000;

void save_calibration(const GammaCalibration& calibration, const std::string& path);
GammaCalibration load_calibration(const std::string& path);

}  // namespace qaoa
