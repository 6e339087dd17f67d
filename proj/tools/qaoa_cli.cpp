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

// qaoa: command-line driver.
//
//   qaoa gen             sample instances to JSON
//   qaoa solve           optimize one instance under an objective
//   qaoa search          ansatz architecture search plus final evaluation
//   qaoa sweep-eta       Gibbs eta sweep against the energy baseline
//   qaoa calibrate-gamma median estimated gamma for fixed-parameter scoring
//   qaoa compare         baseline / Gibbs / sparse comparison batch
//   qaoa report          percentile table from a compare output directory
//
// Every subcommand takes --seed, --out and --config <json>. Keys in the config
// file use the long flag names without dashes (max-remove -> "max_remove");
// flags given on the command line win.

#include "qaoa/analytics.hpp"
#include "qaoa/evaluation.hpp"
#include "qaoa/harness.hpp"
#include "qaoa/io.hpp"
#include "qaoa/search.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <fstream>
#include <optional>
#include <sstream>

using namespace qaoa;

namespace {

// Fills options that were not given on the command line from a JSON config.
class ConfigBinder {
 public:
  template <typename T>
  CLI::Option* option(CLI::App* app, const std::string& name, T& target, const std::string& help) {
    auto* opt = app->add_option("--" + name, target, help);
    bind(opt, name, target);
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, bool& target, const std::string& help) {
    auto* opt = app->add_flag("--" + name, target, help);
    bind(opt, name, target);
    return opt;
  }

  void apply(const std::string& path) {
    if (path.empty()) return;
    doc_ = read_json_file(path);
    for (const auto& fill : fillers_) fill(doc_);
  }

  const Json& document() const { return doc_; }

 private:
  template <typename T>
  void bind(CLI::Option* opt, std::string name, T& target) {
    std::replace(name.begin(), name.end(), '-', '_');
    fillers_.push_back([opt, name, &target](const Json& doc) {
      if (opt->count() == 0 && doc.contains(name)) target = doc.at(name).get<typename Unwrap<T>::type>();
    });
  }

  template <typename T>
  struct Unwrap {
    using type = T;
  };
  template <typename T>
  struct Unwrap<std::optional<T>> {
    using type = T;
  };

  std::vector<std::function<void(const Json&)>> fillers_;
  Json doc_ = Json::object();
};

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

void add_common(CLI::App* app, ConfigBinder& binder, Common& c) {
  binder.option(app, "seed", c.seed, "base seed");
  binder.option(app, "out", c.out, "output file or directory");
  app->add_option("--config", c.config, "JSON config; command-line flags override it");
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    const auto parent = std::filesystem::path(out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    write_json_file(out, doc);
  }
}

// An instance from --instance (single instance or gen output with --index), or sampled from --kind and --seed.
struct InstanceSource {
  std::string path;
  std::size_t index = 0;
  std::string kind = "grid";

  void add(CLI::App* app, ConfigBinder& binder) {
    binder.option(app, "instance", path, "instance JSON (single instance or gen output)");
    binder.option(app, "index", index, "instance index within a gen file");
    binder.option(app, "kind", kind, "graph kind when sampling: grid, complete, grid:RxC, complete:N");
  }

  ProblemInstance load(std::uint64_t seed) const {
    if (path.empty()) return sample_instance(parse_graph_kind(kind), seed);
    const auto doc = read_json_file(path);
    if (doc.contains("instances")) return instance_from_json(doc.at("instances").at(index));
    return instance_from_json(doc);
  }
};

struct SimplexFlags {
  int max_evals = SimplexConfig{}.max_evals;
  int restarts = SimplexConfig{}.restarts;

  void add(CLI::App* app, ConfigBinder& binder) {
    binder.option(app, "max-evals", max_evals, "Nelder-Mead evaluation budget");
    binder.option(app, "restarts", restarts, "Nelder-Mead restarts");
  }
  SimplexConfig config() const {
    SimplexConfig s;
    s.max_evals = max_evals;
    s.restarts = restarts;
    return s;
  }
};

ObjectiveSpec objective_named(const std::string& name, double eta) {
  if (name == "gibbs") return GibbsObjective{eta};
  if (name == "energy") return EnergyObjective{};
  if (name == "low-energy") return LowEnergyObjective{};
  throw std::invalid_argument("unknown objective '" + name + "'");
}

Json measurement_json(const ParamOptimization& opt, const Measurement& m) {
  return {{"beta", opt.params.betas}, {"gamma", opt.params.gammas}, {"objective", opt.objective},
          {"energy", m.energy},       {"p_low", m.p_low},           {"converged", opt.converged},
          {"evals", opt.evals}};
}

std::optional<double> fixed_gamma(const std::optional<double>& gamma, const std::string& calibration) {
  if (gamma) return gamma;
  if (!calibration.empty()) return load_calibration(calibration).gamma_median;
  return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA objectives and ansatz architecture search"};
  app.require_subcommand(1);

  // gen
  ConfigBinder gen_cfg;
  Common gen_common;
  std::string gen_kind = "grid";
  std::size_t gen_count = 1;
  auto* gen = app.add_subcommand("gen", "sample instances to JSON");
  add_common(gen, gen_cfg, gen_common);
  gen_cfg.option(gen, "kind", gen_kind, "graph kind");
  gen_cfg.option(gen, "count", gen_count, "number of instances");

  // solve
  ConfigBinder solve_cfg;
  Common solve_common;
  InstanceSource solve_src;
  SimplexFlags solve_simplex;
  std::string solve_objective = "gibbs";
  double solve_eta = kDefaultEta;
  int solve_depth = 1;
  auto* solve = app.add_subcommand("solve", "optimize circuit parameters on one instance");
  add_common(solve, solve_cfg, solve_common);
  solve_src.add(solve, solve_cfg);
  solve_simplex.add(solve, solve_cfg);
  solve_cfg.option(solve, "objective", solve_objective, "gibbs, energy or low-energy");
  solve_cfg.option(solve, "eta", solve_eta, "Gibbs inverse temperature");
  solve_cfg.option(solve, "depth", solve_depth, "circuit depth p");

  // search
  ConfigBinder search_cfg;
  Common search_common;
  InstanceSource search_src;
  SimplexFlags search_simplex;
  std::string search_scoring = "nm";
  int search_beam = 1;
  int search_max_remove = 20;
  double search_eta = kDefaultEta;
  std::optional<double> search_gamma;
  std::string search_calibration;
  std::size_t search_top_k = 0;
  auto* search = app.add_subcommand("search", "ansatz architecture search");
  add_common(search, search_cfg, search_common);
  search_src.add(search, search_cfg);
  search_simplex.add(search, search_cfg);
  search_cfg.option(search, "scoring", search_scoring, "nm, estimated, fixed, random or energy-approx")
      ->check(CLI::IsMember({"nm", "estimated", "fixed", "random", "energy-approx"}));
  search_cfg.option(search, "beam-width", search_beam, "survivors per level");
  search_cfg.option(search, "max-remove", search_max_remove, "number of edges to remove");
  search_cfg.option(search, "eta", search_eta, "Gibbs inverse temperature");
  search_cfg.option(search, "gamma", search_gamma, "gamma for fixed scoring");
  search_cfg.option(search, "calibration", search_calibration, "calibration file for fixed scoring");
  search_cfg.option(search, "top-k", search_top_k, "re-optimize the k best final survivors");

  // sweep-eta and compare share the experiment flags.
  struct ExperimentFlags {
    ConfigBinder binder;
    Common common;
    std::string kind;
    std::size_t instances = 0;
    std::vector<double> etas;
    double eta = 0.0;
    std::string objective;
    std::string scoring;
    int beam = 0;
    int max_remove = 0;
    std::optional<double> gamma;
    std::string calibration;
    bool sparse = false;
    int max_evals = 0;

    void add(CLI::App* sub, bool comparison) {
      add_common(sub, binder, common);
      sub->add_option("--kind", kind, "graph kind");
      sub->add_option("--instances", instances, "instance count");
      sub->add_option("--max-evals", max_evals, "Nelder-Mead evaluation budget");
      if (!comparison) {
        sub->add_option("--etas", etas, "eta values")->delimiter(',');
        return;
      }
      sub->add_option("--eta", eta, "Gibbs inverse temperature");
      sub->add_option("--objective", objective, "variant objective: gibbs or energy");
      sub->add_flag("--sparse", sparse, "also run the sparse ansatz");
      sub->add_option("--scoring", scoring, "search scoring");
      sub->add_option("--beam-width", beam, "search beam width");
      sub->add_option("--max-remove", max_remove, "edges to remove");
      sub->add_option("--gamma", gamma, "gamma for fixed scoring");
      sub->add_option("--calibration", calibration, "calibration file for fixed scoring");
    }

    bool given(CLI::App* sub, const std::string& name) const { return sub->get_option(name)->count() > 0; }

    ExperimentConfig build(CLI::App* sub) const {
      ExperimentConfig c;
      Json doc = common.config.empty() ? Json::object() : read_json_file(common.config);
      c = experiment_config_from_json(doc);
      if (given(sub, "--seed")) c.seed = common.seed;
      if (given(sub, "--out")) c.output_dir = common.out;
      if (given(sub, "--kind")) c.kind = parse_graph_kind(kind);
      if (given(sub, "--instances")) c.instances = instances;
      if (given(sub, "--max-evals")) c.simplex.max_evals = max_evals;
      if (sub->get_option_no_throw("--etas") && given(sub, "--etas")) c.eta_list = etas;
      if (!sub->get_option_no_throw("--eta")) return c;

      if (given(sub, "--objective") || given(sub, "--eta")) {
        const auto* gibbs = std::get_if<GibbsObjective>(&c.objective);
        const double e = given(sub, "--eta") ? eta : (gibbs ? gibbs->eta : kDefaultEta);
        const std::string name = given(sub, "--objective") ? objective : (gibbs ? "gibbs" : "energy");
        c.objective = objective_named(name, e);
      }
      if (given(sub, "--sparse")) c.sparse = sparse;
      if (given(sub, "--beam-width")) c.search.beam_width = beam;
      if (given(sub, "--max-remove")) c.search.max_removals = max_remove;
      if (given(sub, "--scoring") || given(sub, "--gamma") || given(sub, "--calibration") || given(sub, "--eta") ||
          given(sub, "--seed") || given(sub, "--max-evals")) {
        const auto* gibbs = std::get_if<GibbsObjective>(&c.objective);
        std::optional<double> g = fixed_gamma(gamma, calibration);
        if (!g)
          if (const auto* f = std::get_if<FixedParamsScore>(&c.search.scoring)) g = f->gamma;
        const std::string name = given(sub, "--scoring") ? scoring : scoring_name(c.search.scoring);
        c.search.scoring = make_scoring(name, gibbs ? gibbs->eta : kDefaultEta, g, c.simplex, c.seed);
      }
      return c;
    }
  };

  ExperimentFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep-eta", "Gibbs eta sweep against the energy baseline");
  sweep_flags.add(sweep, false);

  ExperimentFlags compare_flags;
  auto* compare = app.add_subcommand("compare", "baseline, Gibbs and sparse-ansatz comparison");
  compare_flags.add(compare, true);

  // calibrate-gamma
  ConfigBinder cal_cfg;
  Common cal_common;
  std::string cal_kind = "grid";
  std::size_t cal_samples = kCalibrationSamples;
  auto* calibrate = app.add_subcommand("calibrate-gamma", "median estimated gamma over sampled instances");
  add_common(calibrate, cal_cfg, cal_common);
  cal_cfg.option(calibrate, "kind", cal_kind, "graph kind");
  cal_cfg.option(calibrate, "samples", cal_samples, "number of sampled instances");

  // report
  ConfigBinder report_cfg;
  Common report_common;
  std::string report_in;
  auto* report = app.add_subcommand("report", "percentile table from a compare output directory");
  add_common(report, report_cfg, report_common);
  report_cfg.option(report, "in", report_in, "compare output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      gen_cfg.apply(gen_common.config);
      const auto kind = parse_graph_kind(gen_kind);
      Json list = Json::array();
      for (std::size_t k = 0; k < gen_count; ++k)
        list.push_back(to_json(sample_instance(kind, batch_instance_seed(gen_common.seed, k))));
      emit({{"kind", to_string(kind)}, {"seed", gen_common.seed}, {"instances", std::move(list)}}, gen_common.out);
    } else if (*solve) {
      solve_cfg.apply(solve_common.config);
      const ProblemContext context(solve_src.load(solve_common.seed));
      const auto spec = objective_named(solve_objective, solve_eta);
      const auto full = context.instance().full_mask();
      const auto opt =
          optimize_parameters(context, full, spec, solve_simplex.config(), solve_common.seed, solve_depth);
      AnsatzEvaluator evaluator(context, full);
      const auto m = evaluator.measure(context.objective(spec), opt.params);
      Json doc = measurement_json(opt, m);
      doc["objective_kind"] = solve_objective;
      doc["instance"] = to_json(context.instance());
      doc["e_gs"] = context.ground_state().e_gs;
      doc["e_cutoff"] = context.cutoff();
      emit(doc, solve_common.out);
    } else if (*search) {
      search_cfg.apply(search_common.config);
      const ProblemContext context(search_src.load(search_common.seed));
      const auto simplex = search_simplex.config();
      SearchConfig config;
      config.beam_width = search_beam;
      config.max_removals = search_max_remove;
      config.seed = search_common.seed;
      config.scoring = make_scoring(search_scoring, search_eta, fixed_gamma(search_gamma, search_calibration),
                                    simplex, search_common.seed);
      const auto trace = run_search(context, config);
      const EvaluationConfig eval{search_eta, simplex, search_common.seed};
      Json doc = {{"instance", to_json(context.instance())},
                  {"e_gs", context.ground_state().e_gs},
                  {"visited_bound", visited_bound(search_beam, search_max_remove, context.instance().num_edges())},
                  {"trace", to_json(trace)},
                  {"final", to_json(final_evaluation(context, trace, eval))}};
      if (search_top_k > 0) {
        const auto r = top_k_reranking(context, trace, search_top_k, eval);
        doc["top_k"] = {{"k", r.k_used}, {"best_scaled_p", r.best_scaled_p}, {"best_mask", r.best_mask.to_hex()},
                        {"scaled_p", r.scaled_p}};
      }
      emit(doc, search_common.out);
    } else if (*sweep) {
      const auto config = sweep_flags.build(sweep);
      const auto result = eta_sweep(config);
      emit_eta_sweep(result, config.output_dir);
      Json points = Json::array();
      for (const auto& p : result.points)
        points.push_back({{"eta", p.eta},
                          {"p5", p.report.p5},
                          {"p50", p.report.p50},
                          {"p95", p.report.p95},
                          {"count", p.report.count},
                          {"convergence_failure_rate", p.convergence_failure_rate}});
      write_json_file((std::filesystem::path(config.output_dir) / "eta_sweep.json").string(),
                      {{"config", to_json(config)}, {"failures", result.failures}, {"points", points}});
    } else if (*compare) {
      const auto config = compare_flags.build(compare);
      const auto summary = run_comparison(config);
      emit_report(summary, config.output_dir);
      for (const auto& row : summary.rows)
        if (!row.ok) std::cerr << "instance " << row.index << " failed: " << row.error << '\n';
    } else if (*calibrate) {
      cal_cfg.apply(cal_common.config);
      const auto c = fixed_gamma_calibration(parse_graph_kind(cal_kind), cal_samples, cal_common.seed);
      emit(to_json(c), cal_common.out);
    } else if (*report) {
      report_cfg.apply(report_common.config);
      const auto summary = read_json_file((std::filesystem::path(report_in) / "summary.json").string());
      std::ostringstream table;
      table << "quantity,p5,p50,p95,count\n";
      for (const char* key : {"improvement", "improvement_sparse", "gate_reduction"}) {
        if (!summary.contains(key)) continue;
        const auto& r = summary.at(key);
        table << key << ',' << format_number(r.at("p5").get<double>()) << ','
              << format_number(r.at("p50").get<double>()) << ',' << format_number(r.at("p95").get<double>()) << ','
              << r.at("count").get<std::size_t>() << '\n';
      }
      if (report_common.out.empty()) {
        std::cout << table.str();
      } else {
        std::ofstream out(report_common.out, std::ios::binary);
        if (!(out << table.str())) throw std::runtime_error("cannot write '" + report_common.out + "'");
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
