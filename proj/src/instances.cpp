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

#include "qaoa/instances.hpp"

#include "qaoa/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qaoa {

GraphKind parse_graph_kind(const std::string& text) {
  if (text == "grid") return GridShape{4, 4};
  if (text == "complete") return CompleteShape{10};
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("unknown graph kind '" + text + "'");
  const auto name = text.substr(0, colon);
  const auto dims = text.substr(colon + 1);
  GraphKind kind;
  try {
    if (name == "grid") {
      const auto x = dims.find('x');
      if (x == std::string::npos) throw std::invalid_argument("missing 'x'");
      kind = GridShape{std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1))};
    } else if (name == "complete") {
      kind = CompleteShape{std::stoi(dims)};
    } else {
      throw std::invalid_argument("unknown graph kind '" + text + "'");
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed graph kind '" + text + "'");
  }
  GraphTopology::from_kind(kind);  // rejects empty or oversized shapes
  return kind;
}

std::string to_string(const GraphKind& kind) {
  if (const auto* grid = std::get_if<GridShape>(&kind))
    return "grid:" + std::to_string(grid->rows) + "x" + std::to_string(grid->cols);
  return "complete:" + std::to_string(std::get<CompleteShape>(kind).vertices);
}

GraphTopology::GraphTopology(GraphKind kind, int num_vertices, std::vector<Edge> edges)
    : kind_(kind), num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_edges() > EdgeMask::kMaxEdges)
    throw std::invalid_argument("graph has more than 64 edges");
  incidence_.resize(static_cast<std::size_t>(num_vertices_));
  for (int e = 0; e < num_edges(); ++e) {
    const auto [u, v] = edges_[static_cast<std::size_t>(e)];
    incidence_[static_cast<std::size_t>(u)].push_back({v, e});
    incidence_[static_cast<std::size_t>(v)].push_back({u, e});
  }
}

GraphTopology GraphTopology::grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be positive");
  std::vector<Edge> edges;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return GraphTopology(GridShape{rows, cols}, rows * cols, std::move(edges));
}

GraphTopology GraphTopology::complete(int vertices) {
  if (vertices < 1) throw std::invalid_argument("complete graph needs at least one vertex");
  std::vector<Edge> edges;
  for (int i = 0; i < vertices; ++i)
    for (int j = i + 1; j < vertices; ++j) edges.push_back({i, j});
  return GraphTopology(CompleteShape{vertices}, vertices, std::move(edges));
}

GraphTopology GraphTopology::from_kind(const GraphKind& kind) {
  if (const auto* grid = std::get_if<GridShape>(&kind)) return GraphTopology::grid(grid->rows, grid->cols);
  return GraphTopology::complete(std::get<CompleteShape>(kind).vertices);
}

EdgeMask::EdgeMask(std::uint64_t bits, int num_edges) : bits_(bits), size_(num_edges) {
  if (num_edges < 0 || num_edges > kMaxEdges)
    throw std::invalid_argument("edge mask size out of range");
  if (num_edges < kMaxEdges && (bits >> num_edges) != 0)
    throw std::invalid_argument("edge mask references edges outside the instance");
}

EdgeMask EdgeMask::full(int num_edges) {
  const std::uint64_t bits = num_edges == kMaxEdges ? ~std::uint64_t{0}
                                                    : (std::uint64_t{1} << num_edges) - 1;
  return EdgeMask(bits, num_edges);
}

EdgeMask EdgeMask::from_hex(const std::string& hex, int num_edges) {
  std::size_t consumed = 0;
  std::uint64_t bits = 0;
  try {
    bits = std::stoull(hex, &consumed, 16);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed edge mask '" + hex + "'");
  }
  if (consumed != hex.size()) throw std::invalid_argument("malformed edge mask '" + hex + "'");
  return EdgeMask(bits, num_edges);
}

int EdgeMask::retained() const { return std::popcount(bits_); }

EdgeMask EdgeMask::without(int edge) const {
  if (edge < 0 || edge >= size_) throw std::out_of_range("edge index out of range");
  return EdgeMask(bits_ & ~(std::uint64_t{1} << edge), size_);
}

EdgeMask EdgeMask::with(int edge) const {
  if (edge < 0 || edge >= size_) throw std::out_of_range("edge index out of range");
  return EdgeMask(bits_ | (std::uint64_t{1} << edge), size_);
}

std::string EdgeMask::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  const int width = std::max(1, (size_ + 3) / 4);
  std::string out(static_cast<std::size_t>(width), '0');
  std::uint64_t bits = bits_;
  for (int i = width - 1; i >= 0; --i, bits >>= 4) out[static_cast<std::size_t>(i)] = kDigits[bits & 0xF];
  return out;
}

ProblemInstance::ProblemInstance(GraphTopology topology, std::vector<double> couplings,
                                 std::uint64_t seed)
    : topology_(std::move(topology)), couplings_(std::move(couplings)), seed_(seed) {
  if (static_cast<int>(couplings_.size()) != topology_.num_edges())
    throw std::invalid_argument("coupling count does not match edge count");
  for (const double j : couplings_)
    if (!(std::abs(j) < 1.0)) throw std::invalid_argument("couplings must lie in (-1, 1)");
}

ProblemInstance sample_instance(const GraphKind& kind, std::uint64_t seed) {
  auto topology = GraphTopology::from_kind(kind);
  Rng rng(seed);
  std::vector<double> couplings(static_cast<std::size_t>(topology.num_edges()));
  for (auto& j : couplings) j = uniform_symmetric_open(rng);
  return ProblemInstance(std::move(topology), std::move(couplings), seed);
}

std::uint64_t batch_instance_seed(std::uint64_t base_seed, std::uint64_t index) {
  return mix_seed(base_seed, index);
}

EnergyTable build_energy_table(const ProblemInstance& instance, const std::optional<EdgeMask>& mask) {
  const int n = instance.num_qubits();
  if (n > 30) throw std::invalid_argument("too many qubits for an explicit energy table");
  if (mask && mask->size() != instance.num_edges())
    throw std::invalid_argument("mask size does not match the instance edge count");

  const std::size_t dim = std::size_t{1} << n;
  EnergyTable table{n, EnergyTable::Vector::Zero(static_cast<Eigen::Index>(dim))};
  const auto edges = instance.topology().edges();
  for (int e = 0; e < instance.num_edges(); ++e) {
    if (mask && !mask->test(e)) continue;
    const double j = instance.coupling(e);
    const auto [u, v] = edges[static_cast<std::size_t>(e)];
    for (std::size_t z = 0; z < dim; ++z) {
      const bool anti = ((z >> u) ^ (z >> v)) & 1U;
      table.energies[static_cast<Eigen::Index>(z)] += anti ? -j : j;
    }
  }
  return table;
}

GroundStateInfo exact_ground_state(const EnergyTable& table) {
  if (table.size() == 0) throw std::invalid_argument("empty energy table");
  GroundStateInfo info;
  info.e_gs = table.energies.minCoeff();
  for (std::size_t z = 0; z < table.size(); ++z)
    if (table[z] == info.e_gs) info.minimizers.push_back(z);
  info.e_cutoff = kLowEnergyFraction * info.e_gs;
  info.energy_per_vertex = table.n_qubits > 0 ? info.e_gs / table.n_qubits : 0.0;
  info.degenerate = info.minimizers.size() == table.size();
  return info;
}

}  // namespace qaoa
