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

#include "qaoa/optimizer.hpp"

#include "qaoa/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qaoa {

void SimplexConfig::validate(int dim) const {
  if (dim < 1) throw std::invalid_argument("optimizer dimension must be at least 1");
  if (!(reflection > 0.0) || !(expansion > 1.0) || !(expansion > reflection))
    throw std::invalid_argument("need reflection > 0 and expansion > max(1, reflection)");
  if (!(contraction > 0.0 && contraction < 1.0) || !(shrink > 0.0 && shrink < 1.0))
    throw std::invalid_argument("contraction and shrink coefficients must lie in (0, 1)");
  if (!(f_tolerance > 0.0) || !(x_tolerance > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (max_evals < dim + 1) throw std::invalid_argument("max_evals must cover the initial simplex");
  if (restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (!(init_high >= init_low)) throw std::invalid_argument("init_high must not be below init_low");
}

namespace {

OptResult single_run(const ScalarObjective& objective, int dim, const SimplexConfig& cfg, Rng& rng) {
  const int vertices = dim + 1;
  std::vector<Eigen::VectorXd> x(static_cast<std::size_t>(vertices), Eigen::VectorXd(dim));
  std::vector<double> fx(static_cast<std::size_t>(vertices));
  OptResult result;

  for (auto& v : x)
    for (int k = 0; k < dim; ++k) v[k] = uniform_real(rng, cfg.init_low, cfg.init_high);

  int evals = 0;
  const auto eval = [&](const Eigen::VectorXd& p) {
    ++evals;
    return objective(p);
  };
  for (int j = 0; j < vertices; ++j) fx[static_cast<std::size_t>(j)] = eval(x[static_cast<std::size_t>(j)]);

  std::vector<int> order(static_cast<std::size_t>(vertices));
  const auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fx[static_cast<std::size_t>(a)] < fx[static_cast<std::size_t>(b)]; });
    std::vector<Eigen::VectorXd> xs;
    std::vector<double> fs;
    xs.reserve(order.size());
    fs.reserve(order.size());
    for (int i : order) {
      xs.push_back(x[static_cast<std::size_t>(i)]);
      fs.push_back(fx[static_cast<std::size_t>(i)]);
    }
    x.swap(xs);
    fx.swap(fs);
  };

  bool converged = false;
  for (;;) {
    sort_simplex();
    result.incumbent_trace.push_back(fx.front());

    const double spread = fx.back() - fx.front();
    double diameter = 0.0;
    for (int j = 1; j < vertices; ++j)
      diameter = std::max(diameter, (x[static_cast<std::size_t>(j)] - x.front()).cwiseAbs().maxCoeff());
    if (spread < cfg.f_tolerance || diameter < cfg.x_tolerance) {
      converged = true;
      break;
    }
    if (evals >= cfg.max_evals) break;

    auto& worst = x.back();
    double& f_worst = fx.back();
    const double f_second = fx[fx.size() - 2];
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int j = 0; j < dim; ++j) centroid += x[static_cast<std::size_t>(j)];
    centroid /= dim;

    const Eigen::VectorXd reflected = centroid + cfg.reflection * (centroid - worst);
    const double f_reflected = eval(reflected);

    if (f_reflected < fx.front()) {
      if (evals >= cfg.max_evals) {
        worst = reflected;
        f_worst = f_reflected;
        continue;
      }
      const Eigen::VectorXd expanded = centroid + cfg.expansion * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        worst = expanded;
        f_worst = f_expanded;
      } else {
        worst = reflected;
        f_worst = f_reflected;
      }
      continue;
    }
    if (f_reflected < f_second) {
      worst = reflected;
      f_worst = f_reflected;
      continue;
    }
    if (evals >= cfg.max_evals) {
      if (f_reflected < f_worst) {
        worst = reflected;
        f_worst = f_reflected;
      }
      continue;
    }

    const bool outside = f_reflected < f_worst;
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + cfg.contraction * (reflected - centroid))
                : Eigen::VectorXd(centroid + cfg.contraction * (worst - centroid));
    const double f_contracted = eval(contracted);
    if (outside ? f_contracted <= f_reflected : f_contracted < f_worst) {
      worst = contracted;
      f_worst = f_contracted;
      continue;
    }

    for (int j = 1; j < vertices && evals < cfg.max_evals; ++j) {
      auto& v = x[static_cast<std::size_t>(j)];
      v = x.front() + cfg.shrink * (v - x.front());
      fx[static_cast<std::size_t>(j)] = eval(v);
    }
  }

  result.best_params = x.front();
  result.best_value = fx.front();
  result.evals_used = evals;
  result.converged = converged;
  return result;
}

}  // namespace

OptResult nelder_mead(const ScalarObjective& objective, int dim, const SimplexConfig& config,
                      std::uint64_t seed) {
  config.validate(dim);
  OptResult best;
  int total_evals = 0;
  std::vector<double> trace;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(config.restarts == 1 ? seed : mix_seed(seed, static_cast<std::uint64_t>(r)));
    OptResult run = single_run(objective, dim, config, rng);
    total_evals += run.evals_used;
    for (const double v : run.incumbent_trace) trace.push_back(trace.empty() ? v : std::min(trace.back(), v));
    if (r == 0 || run.best_value < best.best_value) best = std::move(run);
  }
  // Report the objective at the returned point itself.
  best.best_value = objective(best.best_params);
  best.evals_used = total_evals + 1;
  best.incumbent_trace = std::move(trace);
  return best;
}

}  // namespace qaoa
