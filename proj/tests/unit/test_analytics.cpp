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
#include "qaoa/objectives.hpp"
#include "qaoa/random.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>

using namespace qaoa;

namespace {

double simulated_energy(const AnsatzGraph& ansatz, double beta, double gamma) {
  const auto full = build_energy_table(ansatz.instance());
  const auto probs = born_probabilities(run_ansatz(ansatz, CircuitParams::single(beta, gamma)));
  return energy_expectation(probs, full);
}

EdgeMask random_mask(Rng& rng, int edges) { return EdgeMask(rng() & EdgeMask::full(edges).bits(), edges); }

}  // namespace

TEST_CASE("triangle detection") {
  const auto k4 = sample_instance(CompleteShape{4}, 0);
  CHECK_FALSE(is_triangle_free(AnsatzGraph::full(k4)));
  // K4 edges: 01 02 03 12 13 23; the 4-cycle 0-1-2-3 is triangle free.
  CHECK(is_triangle_free(AnsatzGraph(k4, EdgeMask(0b101101, 6))));
  const auto grid = sample_instance(GridShape{4, 4}, 0);
  CHECK(is_triangle_free(AnsatzGraph::full(grid)));
}

TEST_CASE("closed-form energy equals simulation on grid sub-ansatzes") {
  Rng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = sample_instance(GridShape{3, 4}, rng());
    const AnsatzGraph ansatz(inst, random_mask(rng, inst.num_edges()));
    for (int k = 0; k < 5; ++k) {
      const double beta = uniform_real(rng, -1.6, 1.6), gamma = uniform_real(rng, -3, 3);
      const auto value = analytic_energy(ansatz, beta, gamma);
      CHECK_FALSE(value.approximate);
      CHECK(std::abs(value.value - simulated_energy(ansatz, beta, gamma)) < 1e-9);
    }
  }
}

TEST_CASE("closed-form energy is flagged approximate on graphs with triangles") {
  const auto inst = sample_instance(CompleteShape{5}, 3);
  CHECK(analytic_energy(AnsatzGraph::full(inst), 0.3, 0.4).approximate);
}

TEST_CASE("moments on a path and a star") {
  // Path 0-1-2 in K3: edges 01, 02, 12; keep 01 and 12.
  const ProblemInstance k3(GraphTopology::complete(3), {0.5, 0.9, -0.3}, 0);
  const AnsatzGraph path(k3, EdgeMask(0b101, 3));
  const auto m = coupling_moments(path);
  CHECK(m.sum_j2 == doctest::Approx(0.25 + 0.09));
  CHECK(m.sum_j4 == doctest::Approx(0.0625 + 0.0081));
  CHECK(m.path_sum == doctest::Approx(0.25 * 0.09));
}

TEST_CASE("cubic truncation equals the series expansion of the closed form") {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const GraphKind kind = trial % 2 ? GraphKind{GridShape{4, 4}} : GraphKind{CompleteShape{6}};
    const auto inst = sample_instance(kind, rng());
    const auto mask = random_mask(rng, inst.num_edges());
    const AnsatzGraph ansatz(inst, mask);
    const auto series = oracle::energy_series(inst, mask);
    for (double g : {-0.3, -0.05, 0.1, 0.7})
      CHECK(analytic_energy_cubic(ansatz, kBetaStar, g).value == doctest::Approx(series(g)).epsilon(1e-12));
  }
}

TEST_CASE("estimated gamma is the argmin of the cubic truncation") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = sample_instance(trial % 2 ? GraphKind{GridShape{4, 4}} : GraphKind{CompleteShape{10}}, rng());
    const auto mask = inst.full_mask();
    const auto series = oracle::energy_series(inst, mask);
    const double argmin = oracle::golden_argmin(series, -20.0, 0.0);
    CHECK(estimated_gamma(AnsatzGraph(inst, mask)) == doctest::Approx(argmin).epsilon(1e-6));
  }
}

TEST_CASE("single edge estimated gamma") {
  for (double j : {0.9, -0.4, 0.05}) {
    const ProblemInstance one(GraphTopology::complete(2), {j}, 0);
    CHECK(estimated_gamma(AnsatzGraph::full(one)) == doctest::Approx(-1.0 / (std::sqrt(2.0) * std::abs(j))).epsilon(1e-14));
  }
  const ProblemInstance zero(GraphTopology::complete(2), {0.0}, 0);
  CHECK_THROWS(estimated_gamma(AnsatzGraph::full(zero)));
  const auto p = estimated_params(AnsatzGraph::full(ProblemInstance(GraphTopology::complete(2), {0.5}, 0)));
  CHECK(p.beta_star == doctest::Approx(std::numbers::pi / 8));
}

TEST_CASE("fixed-gamma calibration is a seeded median and round-trips through JSON") {
  const auto a = fixed_gamma_calibration(GridShape{4, 4}, 200, 5);
  const auto b = fixed_gamma_calibration(GridShape{4, 4}, 200, 5);
  CHECK(a.gamma_median == b.gamma_median);
  CHECK(a.gamma_median < 0.0);

  std::vector<double> gammas;
  for (std::size_t i = 0; i < 200; ++i)
    gammas.push_back(estimated_gamma(AnsatzGraph::full(sample_instance(GridShape{4, 4}, mix_seed(5, i)))));
  std::sort(gammas.begin(), gammas.end());
  CHECK(a.gamma_median == doctest::Approx(0.5 * (gammas[99] + gammas[100])).epsilon(1e-15));

  const auto path = (std::filesystem::temp_directory_path() / "qaoa_calibration_test.json").string();
  save_calibration(a, path);
  const auto back = load_calibration(path);
  CHECK(back.gamma_median == a.gamma_median);
  CHECK(back.n_samples == a.n_samples);
  CHECK(back.kind == a.kind);
  std::remove(path.c_str());
}
