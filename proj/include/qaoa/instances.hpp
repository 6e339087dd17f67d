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

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qaoa {

struct GridShape {
  int rows = 4;
  int cols = 4;
  bool operator==(const GridShape&) const = default;
};

struct CompleteShape {
  int vertices = 10;
  bool operator==(const CompleteShape&) const = default;
};

using GraphKind = std::variant<GridShape, CompleteShape>;

/// "grid:4x4" / "complete:10". Also accepts the short names "grid" and
/// "complete" for the two standard sizes.
GraphKind parse_graph_kind(const std::string& text);
std::string to_string(const GraphKind& kind);

struct Edge {
  int u = 0;  // u < v
  int v = 0;
  bool operator==(const Edge&) const = default;
};

/// Undirected simple graph with a canonical edge order: row-major for grids
/// (each vertex's right then down neighbor), lexicographic for complete graphs.
class GraphTopology {
 public:
  static GraphTopology grid(int rows, int cols);
  static GraphTopology complete(int vertices);
  static GraphTopology from_kind(const GraphKind& kind);

  const GraphKind& kind() const { return kind_; }
  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }

  struct Incidence {
    int neighbor;
    int edge;
  };
  std::span<const Incidence> incident(int vertex) const {
    return incidence_[static_cast<std::size_t>(vertex)];
  }

  bool operator==(const GraphTopology& other) const {
    return kind_ == other.kind_ && edges_ == other.edges_;
  }

 private:
  GraphTopology(GraphKind kind, int num_vertices, std::vector<Edge> edges);

  GraphKind kind_;
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
};

/// Subset of an instance's edges, one bit per edge in canonical order.
class EdgeMask {
 public:
  static constexpr int kMaxEdges = 64;

  EdgeMask() = default;
  EdgeMask(std::uint64_t bits, int num_edges);
  static EdgeMask full(int num_edges);
  static EdgeMask empty(int num_edges) { return EdgeMask(0, num_edges); }
  static EdgeMask from_hex(const std::string& hex, int num_edges);

  std::uint64_t bits() const { return bits_; }
  int size() const { return size_; }
  bool test(int edge) const { return (bits_ >> edge) & 1U; }
  int retained() const;
  int removed() const { return size_ - retained(); }
  EdgeMask without(int edge) const;
  EdgeMask with(int edge) const;
  std::string to_hex() const;

  bool operator==(const EdgeMask&) const = default;
  /// Canonical order: numeric value of the bit pattern.
  bool operator<(const EdgeMask& other) const { return bits_ < other.bits_; }

 private:
  std::uint64_t bits_ = 0;
  int size_ = 0;
};

struct EdgeMaskHash {
  std::size_t operator()(const EdgeMask& mask) const noexcept {
    return std::hash<std::uint64_t>{}(mask.bits());
  }
};

/// Ising instance: topology plus one coupling in (-1, 1) per edge.
class ProblemInstance {
 public:
  ProblemInstance(GraphTopology topology, std::vector<double> couplings, std::uint64_t seed);

  const GraphTopology& topology() const { return topology_; }
  std::span<const double> couplings() const { return couplings_; }
  double coupling(int edge) const { return couplings_[static_cast<std::size_t>(edge)]; }
  std::uint64_t seed() const { return seed_; }
  int num_qubits() const { return topology_.num_vertices(); }
  int num_edges() const { return topology_.num_edges(); }
  EdgeMask full_mask() const { return EdgeMask::full(num_edges()); }

  bool operator==(const ProblemInstance&) const = default;

 private:
  GraphTopology topology_;
  std::vector<double> couplings_;
  std::uint64_t seed_ = 0;
};

/// Couplings i.i.d. uniform on (-1, 1) from a generator seeded with `seed`.
ProblemInstance sample_instance(const GraphKind& kind, std::uint64_t seed);

/// Seed of instance `index` in a batch generated from `base_seed`.
std::uint64_t batch_instance_seed(std::uint64_t base_seed, std::uint64_t index);

/// Diagonal of the cost Hamiltonian over all 2^n computational basis states.
/// Bit q of the index is qubit q; spin s_q = 1 - 2 b_q, so |0> carries +1.
template <typename Real>
struct BasicEnergyTable {
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  int n_qubits = 0;
  Vector energies;

  std::size_t size() const { return static_cast<std::size_t>(energies.size()); }
  Real operator[](std::size_t z) const { return energies[static_cast<Eigen::Index>(z)]; }

  template <typename Other>
  BasicEnergyTable<Other> cast() const {
    return {n_qubits, energies.template cast<Other>()};
  }
};

using EnergyTable = BasicEnergyTable<double>;

/// Energies of all basis states under the instance Hamiltonian restricted to
/// the edges selected by `mask` (all edges when absent).
EnergyTable build_energy_table(const ProblemInstance& instance,
                               const std::optional<EdgeMask>& mask = std::nullopt);

struct GroundStateInfo {
  double e_gs = 0.0;
  std::vector<std::uint64_t> minimizers;
  double e_cutoff = 0.0;  // 0.95 * e_gs
  double energy_per_vertex = 0.0;
  bool degenerate = false;  // every basis state attains e_gs
};

inline constexpr double kLowEnergyFraction = 0.95;

GroundStateInfo exact_ground_state(const EnergyTable& table);

}  // namespace qaoa
