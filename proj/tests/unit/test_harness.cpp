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

#include "qaoa/harness.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qaoa;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("qaoa_harness_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.kind = GridShape{2, 3};
  c.instances = 4;
  c.seed = 77;
  c.simplex.max_evals = 80;
  c.search.max_removals = 3;
  c.search.scoring = EstimatedParamsScore{};
  return c;
}

}  // namespace

TEST_CASE("relative improvement") {
  CHECK(relative_improvement(0.3, 0.2) == doctest::Approx(50.0));
  CHECK(relative_improvement(0.2, 0.2) == 0.0);
  CHECK(relative_improvement(0.1, 0.2) == doctest::Approx(-50.0));
  CHECK_THROWS(relative_improvement(0.1, 0.0));
}

TEST_CASE("gate reduction") {
  const auto k10 = sample_instance(CompleteShape{10}, 0);
  EdgeMask m = k10.full_mask();
  for (int e = 0; e < 15; ++e) m = m.without(e);
  CHECK(gate_reduction(m) == doctest::Approx(-33.3).epsilon(1e-3));
  EdgeMask g = EdgeMask::full(24);
  for (int e = 0; e < 5; ++e) g = g.without(e);
  CHECK(gate_reduction(g) == doctest::Approx(-20.8).epsilon(2e-3));
  CHECK(gate_reduction(AnsatzGraph::full(k10)) == 0.0);
}

TEST_CASE("percentiles interpolate linearly between closest ranks") {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0, 5.0};
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK(percentile(v, 1.0) == 5.0);
  CHECK(percentile(v, 0.5) == 3.0);
  CHECK(percentile(v, 0.05) == doctest::Approx(1.2));
  CHECK(percentile(v, 0.95) == doctest::Approx(4.8));
  const std::vector<double> two{0.0, 10.0};
  CHECK(percentile(two, 0.25) == doctest::Approx(2.5));
  const std::vector<double> one{7.0};
  CHECK(percentile(one, 0.3) == 7.0);
  CHECK_THROWS(percentile(std::vector<double>{}, 0.5));
  CHECK_THROWS(percentile(v, 1.5));

  std::vector<double> many;
  for (int i = 0; i < 37; ++i) many.push_back(std::sin(i * 1.7) * 10);
  const auto r = percentile_report(many);
  CHECK(r.p5 <= r.p50);
  CHECK(r.p50 <= r.p95);
  CHECK(r.count == 37);
}

TEST_CASE("comparing the baseline protocol with itself gives zero improvement") {
  auto c = small_config();
  c.instances = 1;
  c.objective = EnergyObjective{};
  const auto s = run_comparison(c);
  REQUIRE(s.rows.size() == 1);
  REQUIRE(s.rows[0].ok);
  CHECK(*s.rows[0].improvement == 0.0);
}

TEST_CASE("comparison rows, sparse variant and report files") {
  auto c = small_config();
  c.sparse = true;
  const auto s = run_comparison(c);
  CHECK(s.failures == 0);
  CHECK(s.rows.size() == 4);
  for (const auto& r : s.rows) {
    CHECK(r.ok);
    CHECK(r.p_baseline > 0.0);
    CHECK(r.p_sparse);
    CHECK(r.level_scaled_p.size() == 4);
    CHECK(*r.gates_removed_percent <= 0.0);
  }

  const auto dir = scratch("report");
  emit_report(s, dir.string());
  for (const char* f : {"rows.csv", "summary.json", "histograms.csv", "level_curves.csv", "ansatz_edges.csv"})
    CHECK(std::filesystem::exists(dir / f));
  const auto curves = slurp(dir / "level_curves.csv");
  CHECK(std::count(curves.begin(), curves.end(), '\n') == 5);  // header + levels 0..3

  const auto again = scratch("report_again");
  emit_report(run_comparison(c), again.string());
  for (const char* f : {"rows.csv", "summary.json", "histograms.csv", "level_curves.csv", "ansatz_edges.csv"})
    CHECK(slurp(dir / f) == slurp(again / f));
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(again);
}

TEST_CASE("empty summary gives a headers-only CSV") {
  BatchSummary empty;
  const auto dir = scratch("empty");
  emit_report(empty, dir.string());
  CHECK(slurp(dir / "rows.csv") == rows_csv_header() + "\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output is reported") {
  const auto file = std::filesystem::temp_directory_path() / "qaoa_harness_not_a_dir";
  std::ofstream(file) << "x";
  CHECK_THROWS_AS(emit_report(BatchSummary{}, (file / "sub").string()), std::runtime_error);
  std::filesystem::remove(file);
}

TEST_CASE("eta sweep reports one point per eta") {
  auto c = small_config();
  c.eta_list = {1e-4, 2.0, 1e5};
  const auto r = eta_sweep(c);
  REQUIRE(r.points.size() == 3);
  for (const auto& p : r.points) {
    CHECK(p.ratios.size() == 4);
    CHECK(p.report.p5 <= p.report.p95);
    CHECK(p.convergence_failure_rate >= 0.0);
    CHECK(p.convergence_failure_rate <= 1.0);
    for (double x : p.ratios) CHECK(std::isfinite(x));
  }
  CHECK(r.points[0].report.p50 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("experiment configuration from JSON with defaults") {
  const auto doc = Json::parse(R"({"kind": "complete:6", "instances": 3, "seed": 9,
    "objective": {"kind": "gibbs", "eta": 8}, "sparse": true,
    "search": {"scoring": "fixed", "gamma": -0.5, "beam_width": 2, "max_removals": 4}})");
  const auto c = experiment_config_from_json(doc);
  CHECK(c.kind == GraphKind{CompleteShape{6}});
  CHECK(c.instances == 3);
  CHECK(std::get<GibbsObjective>(c.objective).eta == 8.0);
  CHECK(std::get<FixedParamsScore>(c.search.scoring).gamma == -0.5);
  CHECK(std::get<FixedParamsScore>(c.search.scoring).eta == 8.0);
  CHECK(c.search.beam_width == 2);
  CHECK(experiment_config_from_json(to_json(c)).search.max_removals == 4);
  CHECK_THROWS(experiment_config_from_json(Json::parse(R"({"search": {"scoring": "fixed"}})")));
  ExperimentConfig zero;
  zero.instances = 0;
  CHECK_THROWS(zero.validate());
}

TEST_CASE("number formatting is shortest round trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-33.333333333333336) == "-33.333333333333336");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("a shared context cache does not change results") {
  auto c = small_config();
  c.sparse = true;
  ContextCache cache;
  const auto first = run_comparison(c, &cache);
  const auto second = run_comparison(c, &cache);
  const auto fresh = run_comparison(c);
  for (std::size_t k = 0; k < fresh.rows.size(); ++k) {
    CHECK(first.rows[k].p_sparse == fresh.rows[k].p_sparse);
    CHECK(second.rows[k].p_variant == fresh.rows[k].p_variant);
    CHECK(second.rows[k].best_mask == fresh.rows[k].best_mask);
  }
  CHECK(cache.get(c.kind, first.rows[0].seed) == cache.get(c.kind, first.rows[0].seed));
}
