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

#include "qaoa/analytics.hpp"
#include "qaoa/instances.hpp"
#include "qaoa/search.hpp"

#include <json.hpp>

#include <string>

namespace qaoa {

using Json = nlohmann::json;

/// {kind, n, edges: [[i, j], ...], couplings: [...], seed}
Json to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const Json& doc);

/// {kind, n_samples, seed, gamma_median}
Json to_json(const GammaCalibration& calibration);
GammaCalibration calibration_from_json(const Json& doc);

/// Per level: survivors with masks as hex over the canonical edge order,
/// scores, and the parameters used for scoring.
Json to_json(const SearchTrace& trace);
Json to_json(const FinalEvaluation& evaluation);
Json to_json(const SimplexConfig& simplex);
SimplexConfig simplex_from_json(const Json& doc, SimplexConfig base = {});

Json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline; throws std::runtime_error when the file cannot be written.
void write_json_file(const std::string& path, const Json& doc);

}  // namespace qaoa
