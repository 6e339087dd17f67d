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

#include "qaoa/io.hpp"

#include <fstream>
#include <stdexcept>

namespace qaoa {

Json to_json(const ProblemInstance& instance) {
  Json edges = Json::array();
  for (const auto& e : instance.topology().edges()) edges.push_back({e.u, e.v});
  return {{"kind", to_string(instance.topology().kind())},
          {"n", instance.num_qubits()},
          {"edges", std::move(edges)},
          {"couplings", std::vector<double>(instance.couplings().begin(), instance.couplings().end())},
          {"seed", instance.seed()}};
}

ProblemInstance instance_from_json(const Json& doc) {
  auto topology = GraphTopology::from_kind(parse_graph_kind(doc.at("kind").get<std::string>()));
  if (doc.at("n").get<int>() != topology.num_vertices())
    throw std::invalid_argument("instance vertex count does not match its kind");
  const auto& edges = doc.at("edges");
  if (edges.size() != static_cast<std::size_t>(topology.num_edges()))
    throw std::invalid_argument("instance edge list does not match its kind");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge stored{edges[e].at(0).get<int>(), edges[e].at(1).get<int>()};
    if (!(stored == topology.edge(static_cast<int>(e))))
      throw std::invalid_argument("instance edges are not in canonical order");
  }
  return ProblemInstance(std::move(topology), doc.at("couplings").get<std::vector<double>>(),
                         doc.at("seed").get<std::uint64_t>());
}

Json to_json(const GammaCalibration& calibration) {
  return {{"kind", to_string(calibration.kind)},
          {"n_samples", calibration.n_samples},
          {"seed", calibration.seed},
          {"gamma_median", calibration.gamma_median}};
}

GammaCalibration calibration_from_json(const Json& doc) {
  return {parse_graph_kind(doc.at("kind").get<std::string>()), doc.at("n_samples").get<std::size_t>(),
          doc.at("seed").get<std::uint64_t>(), doc.at("gamma_median").get<double>()};
}

namespace {

Json optional_number(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

}  // namespace

Json to_json(const SimplexConfig& s) {
  return {{"reflection", s.reflection}, {"expansion", s.expansion},     {"contraction", s.contraction},
          {"shrink", s.shrink},         {"max_evals", s.max_evals},     {"f_tolerance", s.f_tolerance},
          {"x_tolerance", s.x_tolerance}, {"restarts", s.restarts},     {"init_low", s.init_low},
          {"init_high", s.init_high}};
}

SimplexConfig simplex_from_json(const Json& doc, SimplexConfig s) {
  s.reflection = doc.value("reflection", s.reflection);
  s.expansion = doc.value("expansion", s.expansion);
  s.contraction = doc.value("contraction", s.contraction);
  s.shrink = doc.value("shrink", s.shrink);
  s.max_evals = doc.value("max_evals", s.max_evals);
  s.f_tolerance = doc.value("f_tolerance", s.f_tolerance);
  s.x_tolerance = doc.value("x_tolerance", s.x_tolerance);
  s.restarts = doc.value("restarts", s.restarts);
  s.init_low = doc.value("init_low", s.init_low);
  s.init_high = doc.value("init_high", s.init_high);
  return s;
}

Json to_json(const SearchTrace& trace) {
  Json scoring = {{"kind", scoring_name(trace.scoring)}};
  std::visit(
      [&](const auto& rule) {
        using Rule = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<Rule, NelderMeadScore>) {
          scoring["eta"] = rule.eta;
          scoring["simplex"] = to_json(rule.simplex);
        } else if constexpr (std::is_same_v<Rule, EstimatedParamsScore>) {
          scoring["eta"] = rule.eta;
        } else if constexpr (std::is_same_v<Rule, FixedParamsScore>) {
          scoring["eta"] = rule.eta;
          scoring["gamma"] = rule.gamma;
        } else if constexpr (std::is_same_v<Rule, RandomScore>) {
          scoring["seed"] = rule.seed;
        }
      },
      trace.scoring);

  Json levels = Json::array();
  for (const auto& level : trace.levels) {
    Json survivors = Json::array();
    for (const auto& s : level.survivors) {
      survivors.push_back({{"mask", s.mask.to_hex()},
                           {"score", s.score},
                           {"beta", optional_number(s.beta)},
                           {"gamma", optional_number(s.gamma)},
                           {"evals", s.evals},
                           {"converged", s.converged}});
    }
    levels.push_back({{"level", level.level},
                      {"candidates_scored", level.candidates_scored},
                      {"survivors", std::move(survivors)}});
  }
  return {{"scoring", std::move(scoring)},
          {"beam_width", trace.beam_width},
          {"visited", trace.visited},
          {"levels", std::move(levels)}};
}

Json to_json(const FinalEvaluation& evaluation) {
  Json levels = Json::array();
  for (const auto& l : evaluation.levels) {
    levels.push_back({{"level", l.level},
                      {"mask", l.mask.to_hex()},
                      {"retained_edges", l.mask.retained()},
                      {"gibbs", l.gibbs},
                      {"beta", l.beta},
                      {"gamma", l.gamma},
                      {"p_low", l.p_low},
                      {"scaled_p", l.scaled_p},
                      {"converged", l.converged},
                      {"p_low_at_scoring", optional_number(l.p_low_at_scoring)},
                      {"scaled_p_at_scoring", optional_number(l.scaled_p_at_scoring)}});
  }
  return {{"p_reference", evaluation.p_reference},
          {"best_level", evaluation.best_level},
          {"levels", std::move(levels)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return Json::parse(in);
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace qaoa
