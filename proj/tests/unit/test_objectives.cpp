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
#include "qaoa/random.hpp"
#include "qaoa/simulator.hpp"

#include <doctest.h>

#include <numbers>

using namespace qaoa;

namespace {

Eigen::VectorXd random_distribution(Rng& rng, Eigen::Index size) {
  Eigen::VectorXd p(size);
  for (Eigen::Index i = 0; i < size; ++i) p[i] = -std::log(1.0 - uniform_unit(rng));
  return p / p.sum();
}

EnergyTable random_table(Rng& rng, int n, double scale = 1.0) {
  EnergyTable t{n, Eigen::VectorXd(Eigen::Index{1} << n)};
  for (Eigen::Index i = 0; i < t.energies.size(); ++i) t.energies[i] = scale * uniform_real(rng, -1, 1);
  return t;
}

Eigen::VectorXd qaoa_probs(const ProblemInstance& inst, double beta, double gamma) {
  return born_probabilities(run_ansatz(AnsatzGraph::full(inst), CircuitParams::single(beta, gamma)));
}

}  // namespace

TEST_CASE("Gibbs objective at eta = 0 is exactly zero") {
  Rng rng(1);
  const auto t = random_table(rng, 4);
  const auto p = random_distribution(rng, 16);
  CHECK(gibbs_objective(p, t, 0.0) == 0.0);
  CHECK_THROWS(gibbs_objective(p, t, -1.0));
}

TEST_CASE("stable and literal forms agree where the literal one is finite") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_table(rng, 5, 3.0);
    const auto p = random_distribution(rng, 32);
    const double eta = uniform_real(rng, 0.01, 50);
    CHECK(gibbs_objective(p, t, eta) == doctest::Approx(gibbs_objective_naive(p, t, eta)).epsilon(1e-10));
  }
}

TEST_CASE("large eta stays finite and approaches eta times the minimum supported energy") {
  Rng rng(3);
  auto t = random_table(rng, 4, 10.0);
  const auto p = random_distribution(rng, 16);
  const double f = gibbs_objective(p, t, 1e5);
  CHECK(std::isfinite(f));
  CHECK_FALSE(std::isfinite(gibbs_objective_naive(p, t, 1e5)));
  const double e_min = t.energies.minCoeff();
  Eigen::Index arg;
  t.energies.minCoeff(&arg);
  CHECK(f == doctest::Approx(1e5 * e_min - std::log(p[arg])).epsilon(1e-12));
}

TEST_CASE("Markov bound P(E < E0) <= <exp(-eta (E - E0))>") {
  Rng rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = random_table(rng, 4);
    const auto p = random_distribution(rng, 16);
    const double e0 = uniform_real(rng, -1, 1);
    const double eta = std::exp(uniform_real(rng, -5, 5));
    const auto b = markov_bound_gap(p, t, eta, e0);
    CHECK(b.lhs <= b.rhs);
  }
}

TEST_CASE("small eta: Gibbs objective is eta times the energy to first order") {
  Rng rng(5);
  const auto t = random_table(rng, 4);
  const auto p = random_distribution(rng, 16);
  const auto c = cumulants(p, t);
  const double eta = 1e-3;
  const double series = eta * c.mu - eta * eta * c.sigma2 / 2 + eta * eta * eta * c.kappa3 / 6;
  CHECK(gibbs_objective(p, t, eta) == doctest::Approx(series).epsilon(1e-10));
}

TEST_CASE("small eta argmin coincides with the energy argmin") {
  const auto inst = sample_instance(CompleteShape{4}, 17);
  const auto table = build_energy_table(inst);
  double best_f = INFINITY, best_e = INFINITY, energy_at_best_f = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int k = 0; k <= 20; ++k) {
      const double beta = std::numbers::pi / 2 * i / 20, gamma = -std::numbers::pi + 2 * std::numbers::pi * k / 20;
      const auto p = qaoa_probs(inst, beta, gamma);
      const double f = gibbs_objective(p, table, 1e-4), e = energy_expectation(p, table);
      if (f < best_f) {
        best_f = f;
        energy_at_best_f = e;
      }
      best_e = std::min(best_e, e);
    }
  }
  CHECK(energy_at_best_f == doctest::Approx(best_e).epsilon(1e-9));
}

TEST_CASE("noisy Gibbs: both evaluation paths agree") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = random_table(rng, 4, 2.0);
    const auto p = random_distribution(rng, 16);
    const double eta = std::exp(uniform_real(rng, -3, 4));
    const NoiseModel noise(uniform_unit(rng) * 0.99);
    CHECK(noisy_gibbs(p, t, eta, noise) == doctest::Approx(noisy_gibbs_correction(p, t, eta, noise)).epsilon(1e-10));
  }
}

TEST_CASE("noise costs at most -log(1 - p)") {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const auto t = random_table(rng, 4, 2.0);
    const auto p = random_distribution(rng, 16);
    const double eta = std::exp(uniform_real(rng, -3, 4));
    const double pn = uniform_unit(rng) * 0.99;
    const double delta = noisy_gibbs(p, t, eta, NoiseModel(pn)) - gibbs_objective(p, t, eta);
    CHECK(delta <= -std::log1p(-pn) + 1e-12);
  }
}

TEST_CASE("noiseless model returns the ideal objective exactly") {
  Rng rng(8);
  const auto t = random_table(rng, 3);
  const auto p = random_distribution(rng, 8);
  CHECK(noisy_gibbs(p, t, 2.0, NoiseModel(0.0)) == gibbs_objective(p, t, 2.0));
  CHECK_THROWS(NoiseModel(1.5));
  CHECK_THROWS(NoiseModel(-0.1));
}

TEST_CASE("noisy probability equals the probability of the mixed distribution") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = random_table(rng, 4);
    const auto p = random_distribution(rng, 16);
    const double e0 = uniform_real(rng, -1, 0), pn = uniform_unit(rng);
    const Eigen::VectorXd mixed = (1 - pn) * p + Eigen::VectorXd::Constant(16, pn / 16);
    const Eigen::VectorXd uniform = Eigen::VectorXd::Constant(16, 1.0 / 16);
    CHECK(std::abs(noisy_prob(prob_low_energy(p, t, e0), prob_low_energy(uniform, t, e0), pn) -
                   prob_low_energy(mixed, t, e0)) < 1e-12);
  }
}

TEST_CASE("eta estimate") {
  CHECK(eta_estimate(-0.95, -1.0) == doctest::Approx(20.0));
  CHECK_THROWS(eta_estimate(-1.0, -1.0));
}

TEST_CASE("optimal eta solves the tilted-mean equation") {
  Rng rng(10);
  const auto t = random_table(rng, 4);
  const auto p = random_distribution(rng, 16);
  const double mu = energy_expectation(p, t), e_min = t.energies.minCoeff();
  const double e0 = 0.5 * (mu + e_min);
  const auto eta = optimal_eta(p, t, e0);
  REQUIRE(eta);
  Eigen::ArrayXd w = p.array() * (-*eta * t.energies.array()).exp();
  CHECK((w * t.energies.array()).sum() / w.sum() == doctest::Approx(e0).epsilon(1e-9));
  CHECK_FALSE(optimal_eta(p, t, mu + 0.1));
  CHECK_FALSE(optimal_eta(p, t, e_min - 0.1));
}

TEST_CASE("half-space objective matches the full-space functions") {
  const auto inst = sample_instance(GridShape{3, 3}, 4);
  const auto table = build_energy_table(inst);
  const double e_gs = table.energies.minCoeff();
  const auto ansatz = AnsatzGraph::full(inst);
  FlipSymmetricSimulator<double> sim(ansatz);
  const auto params = CircuitParams::single(0.3, -0.4);
  sim.run(params);
  const auto p = born_probabilities(run_ansatz(ansatz, params));

  const ObjectiveFunction gibbs(table, GibbsObjective{20.0}, e_gs);
  CHECK(gibbs.from_mean(sim.expectation(gibbs.half_weights())) == doctest::Approx(gibbs_objective(p, table, 20.0)).epsilon(1e-12));
  const ObjectiveFunction energy(table, EnergyObjective{}, e_gs);
  CHECK(energy.from_mean(sim.expectation(energy.half_weights())) == doctest::Approx(energy_expectation(p, table)).epsilon(1e-12));
  const ObjectiveFunction low(table, LowEnergyObjective{}, e_gs);
  CHECK(-low.from_mean(sim.expectation(low.half_weights())) == doctest::Approx(prob_low_energy(p, table, 0.95 * e_gs)).epsilon(1e-12));
  CHECK_THROWS(ObjectiveFunction(table, GibbsObjective{0.0}, e_gs));
}
