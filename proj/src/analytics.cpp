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

#include "qaoa/analytics.hpp"

#include "qaoa/io.hpp"
#include "qaoa/parallel.hpp"
#include "qaoa/random.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qaoa {

bool is_triangle_free(const AnsatzGraph& ansatz) {
  const auto& topo = ansatz.instance().topology();
  std::vector<char> marked(static_cast<std::size_t>(topo.num_vertices()), 0);
  for (int e = 0; e < topo.num_edges(); ++e) {
    if (!ansatz.mask().test(e)) continue;
    const auto [u, v] = topo.edge(e);
    for (const auto& inc : topo.incident(u))
      if (ansatz.mask().test(inc.edge)) marked[static_cast<std::size_t>(inc.neighbor)] = 1;
    bool shared = false;
    for (const auto& inc : topo.incident(v))
      if (ansatz.mask().test(inc.edge) && marked[static_cast<std::size_t>(inc.neighbor)]) shared = true;
    for (const auto& inc : topo.incident(u)) marked[static_cast<std::size_t>(inc.neighbor)] = 0;
    if (shared) return false;
  }
  return true;
}

AnalyticValue analytic_energy(const AnsatzGraph& ansatz, double beta, double gamma) {
  const auto& topo = ansatz.instance().topology();
  // prod of cos(2 g J) over the edges at `vertex` other than `skip_edge`; removed edges give cos 0 = 1.
  const auto neighbor_product = [&](int vertex, int skip_edge) {
    double prod = 1.0;
    for (const auto& inc : topo.incident(vertex))
      if (inc.edge != skip_edge) prod *= std::cos(2.0 * gamma * ansatz.effective_coupling(inc.edge));
    return prod;
  };
  double sum = 0.0;
  for (int e = 0; e < topo.num_edges(); ++e) {
    const double j = ansatz.effective_coupling(e);
    if (j == 0.0) continue;
    const auto [u, v] = topo.edge(e);
    sum += j * std::sin(2.0 * gamma * j) * (neighbor_product(u, e) + neighbor_product(v, e));
  }
  return {0.5 * std::sin(4.0 * beta) * sum, !is_triangle_free(ansatz)};
}

CouplingMoments coupling_moments(const AnsatzGraph& ansatz) {
  const auto& topo = ansatz.instance().topology();
  CouplingMoments m;
  for (int e = 0; e < topo.num_edges(); ++e) {
    const double j2 = ansatz.effective_coupling(e) * ansatz.effective_coupling(e);
    m.sum_j2 += j2;
    m.sum_j4 += j2 * j2;
  }
  // Paths k-i-j centered at i: pairs of distinct retained edges at i.
  for (int i = 0; i < topo.num_vertices(); ++i) {
    double s1 = 0.0, s2 = 0.0;
    for (const auto& inc : topo.incident(i)) {
      const double j2 = ansatz.effective_coupling(inc.edge) * ansatz.effective_coupling(inc.edge);
      s1 += j2;
      s2 += j2 * j2;
    }
    m.path_sum += 0.5 * (s1 * s1 - s2);
  }
  return m;
}

AnalyticValue analytic_energy_cubic(const AnsatzGraph& ansatz, double beta, double gamma) {
  const auto m = coupling_moments(ansatz);
  const double g3 = gamma * gamma * gamma;
  const double poly = 2.0 * m.sum_j2 * gamma - (4.0 / 3.0) * (m.sum_j4 + 3.0 * m.path_sum) * g3;
  return {std::sin(4.0 * beta) * poly, !is_triangle_free(ansatz)};
}

double estimated_gamma(const AnsatzGraph& ansatz) {
  const auto m = coupling_moments(ansatz);
  const double denom = 6.0 * (m.path_sum + m.sum_j4 / 3.0);
  if (!(m.sum_j2 > 0.0) || !(denom > 0.0))
    throw std::invalid_argument("estimated gamma needs at least one nonzero retained coupling");
  return -std::sqrt(m.sum_j2 / denom);
}

ParamEstimate estimated_params(const AnsatzGraph& ansatz) {
  return {kBetaStar, estimated_gamma(ansatz), ParamMethod::Estimated};
}

GammaCalibration fixed_gamma_calibration(const GraphKind& kind, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("calibration needs at least one sample");
  std::vector<double> gammas(n_samples);
  parallel_for(n_samples, [&](std::size_t i) {
    const auto instance = sample_instance(kind, mix_seed(seed, i));
    gammas[i] = estimated_gamma(AnsatzGraph::full(instance));
  });
  const std::size_t mid = n_samples / 2;
  std::nth_element(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(mid), gammas.end());
  double median = gammas[mid];
  if (n_samples % 2 == 0) {
    const double lower = *std::max_element(gammas.begin(), gammas.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (lower + median);
  }
  return {kind, n_samples, seed, median};
}

void save_calibration(const GammaCalibration& calibration, const std::string& path) {
  write_json_file(path, to_json(calibration));
}

GammaCalibration load_calibration(const std::string& path) {
  return calibration_from_json(read_json_file(path));
}

}  // namespace qaoa
