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

#include "qaoa/evaluation.hpp"
#include "qaoa/instances.hpp"
#include "qaoa/io.hpp"
#include "qaoa/objectives.hpp"
#include "qaoa/optimizer.hpp"
#include "qaoa/search.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qaoa {

/// {1e-4, 0.5, 2, 8, 20, 100, 1e5}
std::vector<double> default_eta_sweep();

struct ExperimentConfig {
  GraphKind kind = GridShape{4, 4};
  std::size_t instances = 100;
  std::uint64_t seed = 0;
  /// Objective of the QAOA variant compared against the QAOA+energy baseline.
  ObjectiveSpec objective = GibbsObjective{};
  std::vector<double> eta_list = default_eta_sweep();
  SimplexConfig simplex;
  /// Also run the sparse ansatz (search + final evaluation). Needs a Gibbs objective.
  bool sparse = false;
  /// Scoring, beam width and removal budget; the seed is replaced per instance.
  SearchConfig search;
  std::string output_dir = "out";

  void validate() const;
};

/// Builds a scoring rule from its CLI name (see scoring_name). Fixed scoring needs `gamma`.
ScoringPrescription make_scoring(const std::string& name, double eta, std::optional<double> gamma,
                                 const SimplexConfig& simplex, std::uint64_t seed);

ExperimentConfig experiment_config_from_json(const Json& doc, ExperimentConfig base = {});
Json to_json(const ExperimentConfig& config);

/// (p_variant / p_baseline - 1) * 100. Throws on a non-positive baseline.
double relative_improvement(double p_variant, double p_baseline);
/// (retained / total - 1) * 100.
double gate_reduction(const EdgeMask& mask);
double gate_reduction(const AnsatzGraph& ansatz);

/// Linear interpolation between closest ranks (inclusive): the value at
/// position q (n - 1) of the sorted sample. Throws on an empty sample or q outside [0, 1].
double percentile(std::span<const double> values, double q);

struct PercentileReport {
  double p5 = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
  std::size_t count = 0;
};

PercentileReport percentile_report(std::span<const double> values);

struct InstanceRow {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;

  double e_gs = 0.0;
  double energy_per_vertex = 0.0;
  double p_baseline = 0.0;
  double p_variant = 0.0;
  std::optional<double> improvement;  // absent when the baseline is zero

  // Sparse ansatz, when requested.
  std::optional<double> p_sparse;
  std::optional<double> improvement_sparse;
  int edges_total = 0;
  int edges_retained = 0;
  std::optional<double> gates_removed_percent;
  std::optional<int> best_level;
  std::optional<EdgeMask> best_mask;
  std::vector<double> level_scaled_p;        // re-optimized, per level
  std::vector<double> level_scaled_p_light;  // at scoring parameters, per level (may be empty)
};

struct BatchSummary {
  ExperimentConfig config;
  std::vector<InstanceRow> rows;  // by instance index
  std::vector<ProblemInstance> instances;  // successfully sampled instances, by index
  PercentileReport improvement;
  std::optional<PercentileReport> improvement_sparse;
  std::optional<PercentileReport> gate_reduction;
  std::size_t failures = 0;
};

/// QAOA+energy baseline, the QAOA variant on the full graph, and optionally the
/// sparse ansatz, on `config.instances` instances seeded batch_instance_seed(seed, k).
/// A failing instance is recorded in its row and the batch continues. With a
/// cache, instance contexts (and their optimization memos) are shared with other runs.
BatchSummary run_comparison(const ExperimentConfig& config, ContextCache* cache = nullptr);

struct EtaSweepPoint {
  double eta = 0.0;
  std::vector<double> ratios;  // P(Gibbs(eta)) / P(energy), per successful instance
  PercentileReport report;
  double convergence_failure_rate = 0.0;
};

struct EtaSweepResult {
  std::vector<EtaSweepPoint> points;
  std::size_t failures = 0;
};

EtaSweepResult eta_sweep(const ExperimentConfig& config, ContextCache* cache = nullptr);

/// Writes into `directory` (created if missing):
///   rows.csv              one line per instance, columns as in rows_csv_header()
///   summary.json          percentile reports
///   histograms.csv        quantity,bin,low,high,count
///   level_curves.csv      level,count,then p5/p50/p95 of re-optimized and light-curve scaled P (sparse only)
///   ansatz_edges.csv      index,u,v,coupling,retained for the selected sparse ansatz (sparse only)
/// Throws std::runtime_error when the directory cannot be written.
void emit_report(const BatchSummary& summary, const std::string& directory);
void emit_eta_sweep(const EtaSweepResult& result, const std::string& directory);

std::string rows_csv_header();

/// Shortest round-trip decimal form, identical across runs.
std::string format_number(double value);

}  // namespace qaoa
