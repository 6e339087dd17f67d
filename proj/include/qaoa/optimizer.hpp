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

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace qaoa {

struct SimplexConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  int max_evals = 600;
  double f_tolerance = 1e-10;
  double x_tolerance = 1e-8;
  int restarts = 1;
  // Initial vertices are drawn coordinate-wise from U(init_low, init_high).
  double init_low = 0.0;
  double init_high = 0.1;

  void validate(int dim) const;
  auto operator<=>(const SimplexConfig&) const = default;
};

struct OptResult {
  Eigen::VectorXd best_params;
  double best_value = 0.0;
  int evals_used = 0;
  bool converged = false;
  /// Best value after each iteration, for all restarts in order.
  std::vector<double> incumbent_trace;
};

using ScalarObjective = std::function<double(const Eigen::VectorXd&)>;

/// Nelder-Mead downhill simplex. Stops when the spread of simplex values drops
/// below f_tolerance, when the simplex diameter (max-norm distance to the best
/// vertex) drops below x_tolerance, or when max_evals is spent (converged =
/// false). With restarts > 1 the best of independently seeded runs is kept.
/// Deterministic given `seed`.
OptResult nelder_mead(const ScalarObjective& objective, int dim, const SimplexConfig& config,
                      std::uint64_t seed);

}  // namespace qaoa
