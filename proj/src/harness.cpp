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

#include "qaoa/evaluation.hpp"
#include "qaoa/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qaoa {

std::vector<double> default_eta_sweep() { return {1e-4, 0.5, 2.0, 8.0, 20.0, 100.0, 1e5}; }

void ExperimentConfig::validate() const {
  if (instances < 1) throw std::invalid_argument("instance count must be at least 1");
  qaoa::validate(objective);
  simplex.validate(2);
  for (double eta : eta_list) validate_eta(eta);
  if (sparse) {
    if (!std::holds_alternative<GibbsObjective>(objective))
      throw std::invalid_argument("the sparse ansatz is evaluated with the Gibbs objective");
    search.validate(GraphTopology::from_kind(kind).num_edges());
  }
}

namespace {

Json objective_to_json(const ObjectiveSpec& spec) {
  return std::visit(
      [](const auto& o) -> Json {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, GibbsObjective>) {
          return {{"kind", "gibbs"}, {"eta", o.eta}};
        } else if constexpr (std::is_same_v<O, EnergyObjective>) {
          return {{"kind", "energy"}};
        } else {
          Json out = {{"kind", "low-energy"}};
          if (o.e0) out["e0"] = *o.e0;
          return out;
        }
      },
      spec);
}

ObjectiveSpec objective_from_json(const Json& doc) {
  const auto kind = doc.is_string() ? doc.get<std::string>() : doc.at("kind").get<std::string>();
  if (kind == "gibbs") return GibbsObjective{doc.is_object() ? doc.value("eta", kDefaultEta) : kDefaultEta};
  if (kind == "energy") return EnergyObjective{};
  if (kind == "low-energy") {
    LowEnergyObjective o;
    if (doc.is_object() && doc.contains("e0")) o.e0 = doc.at("e0").get<double>();
    return o;
  }
  throw std::invalid_argument("unknown objective '" + kind + "'");
}

}  // namespace

ScoringPrescription make_scoring(const std::string& name, double eta, std::optional<double> gamma,
                                 const SimplexConfig& simplex, std::uint64_t seed) {
  if (name == "nm") return NelderMeadScore{simplex, eta};
  if (name == "estimated") return EstimatedParamsScore{eta};
  if (name == "fixed") {
    if (!gamma) throw std::invalid_argument("fixed scoring needs a gamma (or a calibration file)");
    return FixedParamsScore{*gamma, eta};
  }
  if (name == "random") return RandomScore{seed};
  if (name == "energy-approx") return EnergyApproxScore{};
  throw std::invalid_argument("unknown scoring '" + name + "'");
}

ExperimentConfig experiment_config_from_json(const Json& doc, ExperimentConfig c) {
  if (doc.contains("kind")) c.kind = parse_graph_kind(doc.at("kind").get<std::string>());
  c.instances = doc.value("instances", c.instances);
  c.seed = doc.value("seed", c.seed);
  if (doc.contains("objective")) c.objective = objective_from_json(doc.at("objective"));
  if (doc.contains("eta_list")) c.eta_list = doc.at("eta_list").get<std::vector<double>>();
  if (doc.contains("simplex")) c.simplex = simplex_from_json(doc.at("simplex"), c.simplex);
  c.sparse = doc.value("sparse", c.sparse);
  c.output_dir = doc.value("output_dir", c.output_dir);
  if (doc.contains("search")) {
    const auto& s = doc.at("search");
    c.search.beam_width = s.value("beam_width", c.search.beam_width);
    c.search.max_removals = s.value("max_removals", c.search.max_removals);
    const auto* gibbs = std::get_if<GibbsObjective>(&c.objective);
    const double eta = s.value("eta", gibbs ? gibbs->eta : kDefaultEta);
    std::optional<double> gamma;
    if (s.contains("gamma")) gamma = s.at("gamma").get<double>();
    c.search.scoring = make_scoring(s.value("scoring", std::string("nm")), eta, gamma, c.simplex, c.seed);
  }
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json search = {{"scoring", scoring_name(c.search.scoring)},
                 {"beam_width", c.search.beam_width},
                 {"max_removals", c.search.max_removals}};
  std::visit(
      [&](const auto& rule) {
        using Rule = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<Rule, NelderMeadScore> || std::is_same_v<Rule, EstimatedParamsScore>)
          search["eta"] = rule.eta;
        if constexpr (std::is_same_v<Rule, FixedParamsScore>) {
          search["eta"] = rule.eta;
          search["gamma"] = rule.gamma;
        }
      },
      c.search.scoring);
  return {{"kind", to_string(c.kind)},
          {"instances", c.instances},
          {"seed", c.seed},
          {"objective", objective_to_json(c.objective)},
          {"eta_list", c.eta_list},
          {"simplex", to_json(c.simplex)},
          {"sparse", c.sparse},
          {"search", std::move(search)},
          {"output_dir", c.output_dir}};
}

double relative_improvement(double p_variant, double p_baseline) {
  if (!(p_baseline > 0.0)) throw std::invalid_argument("relative improvement needs a positive baseline");
  return (p_variant / p_baseline - 1.0) * 100.0;
}

double gate_reduction(const EdgeMask& mask) {
  if (mask.size() == 0) return 0.0;
  return (static_cast<double>(mask.retained()) / mask.size() - 1.0) * 100.0;
}

double gate_reduction(const AnsatzGraph& ansatz) { return gate_reduction(ansatz.mask()); }

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile rank must lie in [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

PercentileReport percentile_report(std::span<const double> values) {
  if (values.empty()) return {};
  return {percentile(values, 0.05), percentile(values, 0.5), percentile(values, 0.95), values.size()};
}

namespace {

std::shared_ptr<const ProblemContext> context_for(const GraphKind& kind, std::uint64_t seed, ContextCache* cache) {
  if (cache) return cache->get(kind, seed);
  return std::make_shared<const ProblemContext>(sample_instance(kind, seed));
}

double measure_p_low(const ProblemContext& context, const EdgeMask& mask, const CircuitParams& params) {
  AnsatzEvaluator evaluator(context, mask);
  return evaluator.measure(context.low_energy_weights(), params).p_low;
}

// QAOA+energy on the full graph: the reference every variant is compared against.
double baseline_probability(const ProblemContext& context, const ExperimentConfig& config, std::uint64_t seed) {
  const auto full = context.instance().full_mask();
  const auto opt = optimize_parameters(context, full, EnergyObjective{}, config.simplex, seed);
  return measure_p_low(context, full, opt.params);
}

SearchConfig instance_search(const ExperimentConfig& config, std::uint64_t seed) {
  SearchConfig s = config.search;
  s.seed = seed;
  if (auto* random = std::get_if<RandomScore>(&s.scoring)) random->seed = seed;
  return s;
}

void run_sparse(const ProblemContext& context, const ExperimentConfig& config, InstanceRow& row) {
  const auto search = instance_search(config, row.seed);
  const auto trace = run_search(context, search);
  const EvaluationConfig eval{std::get<GibbsObjective>(config.objective).eta, config.simplex, row.seed};
  const auto final = final_evaluation(context, trace, eval);
  const auto& best = final.levels[static_cast<std::size_t>(final.best_level)];

  row.p_sparse = best.p_low;
  if (row.p_baseline > 0.0) row.improvement_sparse = relative_improvement(best.p_low, row.p_baseline);
  row.edges_total = best.mask.size();
  row.edges_retained = best.mask.retained();
  row.gates_removed_percent = gate_reduction(best.mask);
  row.best_level = best.level;
  row.best_mask = best.mask;
  for (const auto& level : final.levels) {
    row.level_scaled_p.push_back(level.scaled_p);
    if (level.scaled_p_at_scoring) row.level_scaled_p_light.push_back(*level.scaled_p_at_scoring);
  }
}

std::vector<double> collect(const std::vector<InstanceRow>& rows, std::optional<double> InstanceRow::*field) {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r.ok && (r.*field)) out.push_back(*(r.*field));
  return out;
}

}  // namespace

BatchSummary run_comparison(const ExperimentConfig& config, ContextCache* cache) {
  config.validate();
  BatchSummary summary;
  summary.config = config;
  summary.rows.resize(config.instances);
  std::vector<std::optional<ProblemInstance>> instances(config.instances);

  parallel_for(config.instances, [&](std::size_t k) {
    auto& row = summary.rows[k];
    row.index = k;
    row.seed = batch_instance_seed(config.seed, k);
    try {
      const auto shared = context_for(config.kind, row.seed, cache);
      const ProblemContext& context = *shared;
      instances[k] = context.instance();
      const auto full = context.instance().full_mask();
      row.e_gs = context.ground_state().e_gs;
      row.energy_per_vertex = context.ground_state().energy_per_vertex;
      row.edges_total = full.size();
      row.edges_retained = full.size();

      row.p_baseline = baseline_probability(context, config, row.seed);
      const auto variant = optimize_parameters(context, full, config.objective, config.simplex, row.seed);
      row.p_variant = measure_p_low(context, full, variant.params);
      if (row.p_baseline > 0.0) row.improvement = relative_improvement(row.p_variant, row.p_baseline);

      if (config.sparse) run_sparse(context, config, row);
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  });

  for (std::size_t k = 0; k < config.instances; ++k) {
    if (!summary.rows[k].ok) ++summary.failures;
    if (instances[k]) summary.instances.push_back(std::move(*instances[k]));
  }

  const auto improvements = collect(summary.rows, &InstanceRow::improvement);
  summary.improvement = percentile_report(improvements);
  if (config.sparse) {
    summary.improvement_sparse = percentile_report(collect(summary.rows, &InstanceRow::improvement_sparse));
    summary.gate_reduction = percentile_report(collect(summary.rows, &InstanceRow::gates_removed_percent));
  }
  return summary;
}

EtaSweepResult eta_sweep(const ExperimentConfig& config, ContextCache* cache) {
  config.validate();
  if (config.eta_list.empty()) throw std::invalid_argument("eta sweep needs at least one eta");
  const std::size_t n_eta = config.eta_list.size();

  struct InstanceSweep {
    bool ok = false;
    std::vector<double> ratio;
    std::vector<bool> converged;
  };
  std::vector<InstanceSweep> per_instance(config.instances);

  parallel_for(config.instances, [&](std::size_t k) {
    auto& out = per_instance[k];
    try {
      const auto seed = batch_instance_seed(config.seed, k);
      const auto shared = context_for(config.kind, seed, cache);
      const ProblemContext& context = *shared;
      const auto full = context.instance().full_mask();
      const double p_baseline = baseline_probability(context, config, seed);
      if (!(p_baseline > 0.0)) throw std::runtime_error("zero baseline probability");
      for (double eta : config.eta_list) {
        const auto opt = optimize_parameters(context, full, GibbsObjective{eta}, config.simplex, seed);
        out.ratio.push_back(measure_p_low(context, full, opt.params) / p_baseline);
        out.converged.push_back(opt.converged);
      }
      out.ok = true;
    } catch (const std::exception&) {
      out.ok = false;
    }
  });

  EtaSweepResult result;
  result.points.resize(n_eta);
  for (std::size_t j = 0; j < n_eta; ++j) {
    auto& point = result.points[j];
    point.eta = config.eta_list[j];
    std::size_t failures = 0;
    for (const auto& inst : per_instance) {
      if (!inst.ok) continue;
      point.ratios.push_back(inst.ratio[j]);
      if (!inst.converged[j]) ++failures;
    }
    point.report = percentile_report(point.ratios);
    point.convergence_failure_rate =
        point.ratios.empty() ? 0.0 : static_cast<double>(failures) / static_cast<double>(point.ratios.size());
  }
  for (const auto& inst : per_instance)
    if (!inst.ok) ++result.failures;
  return result;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string rows_csv_header() {
  return "index,seed,status,e_gs,energy_per_vertex,p_baseline,p_variant,improvement,"
         "p_sparse,improvement_sparse,edges_total,edges_retained,gate_reduction,best_level,best_mask,error";
}

namespace {

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void prepare_directory(const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec || !std::filesystem::is_directory(directory))
    throw std::runtime_error("cannot create output directory '" + directory + "'");
}

Json report_json(const PercentileReport& r) {
  return {{"p5", r.p5}, {"p50", r.p50}, {"p95", r.p95}, {"count", r.count}};
}

struct Histogram {
  double low = 0.0;
  double high = 0.0;
  std::vector<std::size_t> counts;
};

// Equal-width bins over [min, max]; the maximum falls in the last bin.
Histogram histogram(const std::vector<double>& values, std::size_t bins) {
  Histogram h;
  h.counts.assign(bins, 0);
  if (values.empty()) return h;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  h.low = *lo;
  h.high = *hi;
  const double width = (h.high - h.low) / static_cast<double>(bins);
  for (double v : values) {
    std::size_t b = width > 0.0 ? static_cast<std::size_t>((v - h.low) / width) : 0;
    ++h.counts[std::min(b, bins - 1)];
  }
  return h;
}

void write_histogram(std::ostream& out, const std::string& name, const std::vector<double>& values) {
  constexpr std::size_t kBins = 20;
  const auto h = histogram(values, kBins);
  if (values.empty()) return;
  const double width = (h.high - h.low) / kBins;
  for (std::size_t b = 0; b < kBins; ++b) {
    out << name << ',' << b << ',' << format_number(h.low + width * static_cast<double>(b)) << ','
        << format_number(b + 1 == kBins ? h.high : h.low + width * static_cast<double>(b + 1)) << ','
        << h.counts[b] << '\n';
  }
}

void write_level_curves(std::ostream& out, const BatchSummary& summary) {
  out << "level,count,scaled_p_p5,scaled_p_p50,scaled_p_p95,light_p5,light_p50,light_p95\n";
  std::size_t levels = 0;
  for (const auto& r : summary.rows)
    if (r.ok) levels = std::max(levels, r.level_scaled_p.size());
  for (std::size_t l = 0; l < levels; ++l) {
    std::vector<double> re, light;
    for (const auto& r : summary.rows) {
      if (!r.ok) continue;
      if (l < r.level_scaled_p.size()) re.push_back(r.level_scaled_p[l]);
      if (l < r.level_scaled_p_light.size()) light.push_back(r.level_scaled_p_light[l]);
    }
    const auto a = percentile_report(re);
    out << l << ',' << re.size() << ',' << format_number(a.p5) << ',' << format_number(a.p50) << ','
        << format_number(a.p95);
    if (light.empty()) {
      out << ",,,\n";
    } else {
      const auto b = percentile_report(light);
      out << ',' << format_number(b.p5) << ',' << format_number(b.p50) << ',' << format_number(b.p95) << '\n';
    }
  }
}

}  // namespace

void emit_report(const BatchSummary& summary, const std::string& directory) {
  prepare_directory(directory);
  const std::filesystem::path dir(directory);

  {
    auto out = open_output(dir / "rows.csv");
    out << rows_csv_header() << '\n';
    for (const auto& r : summary.rows) {
      out << r.index << ',' << r.seed << ',' << (r.ok ? "ok" : "failed") << ',';
      if (r.ok) {
        out << format_number(r.e_gs) << ',' << format_number(r.energy_per_vertex) << ','
            << format_number(r.p_baseline) << ',' << format_number(r.p_variant) << ',' << opt_number(r.improvement)
            << ',' << opt_number(r.p_sparse) << ',' << opt_number(r.improvement_sparse) << ',' << r.edges_total
            << ',' << r.edges_retained << ',' << opt_number(r.gates_removed_percent) << ','
            << (r.best_level ? std::to_string(*r.best_level) : "") << ','
            << (r.best_mask ? r.best_mask->to_hex() : "") << ",\n";
      } else {
        out << ",,,,,,,,,,,," << csv_field(r.error) << '\n';
      }
    }
  }

  Json doc = {{"config", to_json(summary.config)},
              {"instances", summary.rows.size()},
              {"failures", summary.failures},
              {"improvement", report_json(summary.improvement)}};
  if (summary.improvement_sparse) doc["improvement_sparse"] = report_json(*summary.improvement_sparse);
  if (summary.gate_reduction) doc["gate_reduction"] = report_json(*summary.gate_reduction);
  write_json_file((dir / "summary.json").string(), doc);

  {
    auto out = open_output(dir / "histograms.csv");
    out << "quantity,bin,low,high,count\n";
    std::vector<double> epv, base, variant, sparse;
    for (const auto& r : summary.rows) {
      if (!r.ok) continue;
      epv.push_back(r.energy_per_vertex);
      base.push_back(r.p_baseline);
      variant.push_back(r.p_variant);
      if (r.p_sparse) sparse.push_back(*r.p_sparse);
    }
    write_histogram(out, "energy_per_vertex", epv);
    write_histogram(out, "p_baseline", base);
    write_histogram(out, "p_variant", variant);
    write_histogram(out, "p_sparse", sparse);
  }

  if (summary.config.sparse) {
    auto curves = open_output(dir / "level_curves.csv");
    write_level_curves(curves, summary);

    auto edges = open_output(dir / "ansatz_edges.csv");
    edges << "index,u,v,coupling,retained\n";
    for (const auto& r : summary.rows) {
      if (!r.ok || !r.best_mask) continue;
      const auto it = std::find_if(summary.instances.begin(), summary.instances.end(),
                                   [&](const ProblemInstance& p) { return p.seed() == r.seed; });
      if (it == summary.instances.end()) continue;
      for (int e = 0; e < it->num_edges(); ++e) {
        const auto& edge = it->topology().edge(e);
        edges << r.index << ',' << edge.u << ',' << edge.v << ',' << format_number(it->coupling(e)) << ','
              << (r.best_mask->test(e) ? 1 : 0) << '\n';
      }
    }
  }
}

void emit_eta_sweep(const EtaSweepResult& result, const std::string& directory) {
  prepare_directory(directory);
  const std::filesystem::path dir(directory);
  auto out = open_output(dir / "eta_sweep.csv");
  out << "eta,count,ratio_p5,ratio_p50,ratio_p95,convergence_failure_rate\n";
  for (const auto& p : result.points) {
    out << format_number(p.eta) << ',' << p.report.count << ',' << format_number(p.report.p5) << ','
        << format_number(p.report.p50) << ',' << format_number(p.report.p95) << ','
        << format_number(p.convergence_failure_rate) << '\n';
  }
}

}  // namespace qaoa
