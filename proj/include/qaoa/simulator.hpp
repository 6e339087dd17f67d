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

#include "qaoa/instances.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qaoa {

/// Pure state on n qubits; amplitude z belongs to basis state |z>.
template <typename Real>
class BasicStateVector {
 public:
  using Complex = std::complex<Real>;
  using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  explicit BasicStateVector(int n_qubits)
      : n_qubits_(n_qubits), amplitudes_(Amplitudes::Zero(Eigen::Index{1} << n_qubits)) {
    amplitudes_[0] = Complex(1);
  }

  /// H^{(x)n}|0^n>.
  static BasicStateVector uniform(int n_qubits) {
    BasicStateVector state(n_qubits);
    state.amplitudes_.setConstant(Complex(std::pow(Real(2), Real(-0.5) * Real(n_qubits))));
    return state;
  }

  static BasicStateVector basis(int n_qubits, std::uint64_t z) {
    BasicStateVector state(n_qubits);
    if (z >= static_cast<std::uint64_t>(state.dimension())) throw std::out_of_range("basis index out of range");
    state.amplitudes_[0] = Complex(0);
    state.amplitudes_[static_cast<Eigen::Index>(z)] = Complex(1);
    return state;
  }

  int num_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Amplitudes& amplitudes() { return amplitudes_; }
  Real squared_norm() const { return amplitudes_.squaredNorm(); }

 private:
  int n_qubits_;
  Amplitudes amplitudes_;
};

using StateVector = BasicStateVector<double>;

/// Variational parameters of a depth-p circuit.
struct CircuitParams {
  std::vector<double> betas;
  std::vector<double> gammas;

  CircuitParams(std::vector<double> betas_, std::vector<double> gammas_)
      : betas(std::move(betas_)), gammas(std::move(gammas_)) {
    if (betas.empty() || betas.size() != gammas.size())
      throw std::invalid_argument("circuit needs p >= 1 betas and gammas of equal length");
  }
  static CircuitParams single(double beta, double gamma) { return {{beta}, {gamma}}; }

  /// Layout [beta_1..beta_p, gamma_1..gamma_p], the optimizer's parameter vector.
  template <typename Derived>
  static CircuitParams from_vector(const Eigen::DenseBase<Derived>& x) {
    const auto p = x.size() / 2;
    if (p < 1 || x.size() != 2 * p) throw std::invalid_argument("parameter vector must have even length >= 2");
    std::vector<double> b(static_cast<std::size_t>(p)), g(static_cast<std::size_t>(p));
    for (Eigen::Index k = 0; k < p; ++k) {
      b[static_cast<std::size_t>(k)] = x[k];
      g[static_cast<std::size_t>(k)] = x[p + k];
    }
    return {std::move(b), std::move(g)};
  }

  int depth() const { return static_cast<int>(betas.size()); }
};

/// Instance subgraph whose edges keep their two-qubit phase gate.
class AnsatzGraph {
 public:
  AnsatzGraph(const ProblemInstance& instance, EdgeMask mask) : instance_(&instance), mask_(mask) {
    if (mask.size() != instance.num_edges())
      throw std::invalid_argument("ansatz mask length does not match the instance edge count");
  }
  static AnsatzGraph full(const ProblemInstance& instance) { return {instance, instance.full_mask()}; }

  const ProblemInstance& instance() const { return *instance_; }
  const EdgeMask& mask() const { return mask_; }
  int retained_edges() const { return mask_.retained(); }
  int removed_edges() const { return mask_.removed(); }

  /// Coupling seen by the circuit: removed edges act as J = 0.
  double effective_coupling(int edge) const { return mask_.test(edge) ? instance_->coupling(edge) : 0.0; }

  EnergyTable energy_table() const { return build_energy_table(*instance_, mask_); }

 private:
  const ProblemInstance* instance_;
  EdgeMask mask_;
};

/// Multiplies amplitude z by exp(i gamma E(z)).
template <typename Real>
void apply_phase_layer(BasicStateVector<Real>& state, const BasicEnergyTable<Real>& table, Real gamma) {
  auto& amps = state.amplitudes();
  const auto* energies = table.energies.data();
  for (Eigen::Index z = 0; z < amps.size(); ++z) {
    const Real angle = gamma * energies[z];
    amps[z] *= std::complex<Real>(std::cos(angle), std::sin(angle));
  }
}

/// exp(i beta X_q) on every qubit: (a0, a1) -> (c a0 + i s a1, i s a0 + c a1).
template <typename Real>
void apply_mixer_layer(BasicStateVector<Real>& state, Real beta) {
  using Complex = std::complex<Real>;
  const Real c = std::cos(beta);
  const Real s = std::sin(beta);
  Complex* amps = state.amplitudes().data();
  const std::size_t dim = static_cast<std::size_t>(state.dimension());
  for (int q = 0; q < state.num_qubits(); ++q) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
      for (std::size_t z = block; z < block + stride; ++z) {
        const Complex a0 = amps[z];
        const Complex a1 = amps[z + stride];
        // i s a = (-s a.imag, s a.real)
        amps[z] = Complex(c * a0.real() - s * a1.imag(), c * a0.imag() + s * a1.real());
        amps[z + stride] = Complex(c * a1.real() - s * a0.imag(), c * a1.imag() + s * a0.real());
      }
    }
  }
}

/// exp(i beta_p X) exp(i gamma_p E) ... exp(i beta_1 X) exp(i gamma_1 E) H^n |0^n>,
/// where E is the (already masked) diagonal in `table`.
template <typename Real>
BasicStateVector<Real> run_ansatz(const BasicEnergyTable<Real>& table, const CircuitParams& params) {
  auto state = BasicStateVector<Real>::uniform(table.n_qubits);
  for (int layer = 0; layer < params.depth(); ++layer) {
    apply_phase_layer(state, table, static_cast<Real>(params.gammas[static_cast<std::size_t>(layer)]));
    apply_mixer_layer(state, static_cast<Real>(params.betas[static_cast<std::size_t>(layer)]));
  }
  return state;
}

inline StateVector run_ansatz(const AnsatzGraph& ansatz, const CircuitParams& params) {
  return run_ansatz(ansatz.energy_table(), params);
}

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> born_probabilities(const BasicStateVector<Real>& state) {
  return state.amplitudes().cwiseAbs2();
}

/// sum_z probs(z) * weight(energies(z)).
template <typename DerivedP, typename Real, typename Weight>
double expectation_diagonal(const Eigen::MatrixBase<DerivedP>& probs, const BasicEnergyTable<Real>& table,
                            Weight&& weight) {
  if (static_cast<std::size_t>(probs.size()) != table.size())
    throw std::invalid_argument("probability and energy tables differ in length");
  double total = 0.0;
  for (Eigen::Index z = 0; z < probs.size(); ++z)
    total += static_cast<double>(probs[z]) * static_cast<double>(weight(table.energies[z]));
  return total;
}

}  // namespace qaoa

namespace qaoa {

/// Hot-path p-layer simulator for a fixed ansatz.
///
/// The cost diagonal, the initial state and the mixer all commute with the
/// global spin flip, so psi(z) = psi(~z) for every layer. Only the half with
/// the top qubit in |0> is stored (split real/imaginary arrays). The top
/// qubit's mixer butterfly pairs z with z ^ (2^{n-1} - 1) inside that half.
/// The phase diagonal is built as a product of per-edge factors exp(+-i gamma J).
template <typename Real>
class FlipSymmetricSimulator {
 public:
  using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  explicit FlipSymmetricSimulator(const AnsatzGraph& ansatz) : n_(ansatz.instance().num_qubits()) {
    if (n_ < 1) throw std::invalid_argument("ansatz needs at least one qubit");
    half_ = std::size_t{1} << (n_ - 1);
    const auto& topo = ansatz.instance().topology();
    back_.resize(static_cast<std::size_t>(n_));
    for (int e = 0; e < topo.num_edges(); ++e) {
      if (!ansatz.mask().test(e)) continue;
      const auto [u, v] = topo.edge(e);
      back_[static_cast<std::size_t>(v)].push_back({u, ansatz.instance().coupling(e)});
    }
    for (const auto& back : back_)
      if (back.size() > 16) throw std::invalid_argument("vertex degree too large for the phase tables");
    re_.resize(half_);
    im_.resize(half_);
    phase_re_.resize(half_);
    phase_im_.resize(half_);
  }

  int num_qubits() const { return n_; }
  std::size_t half_dimension() const { return half_; }

  void run(const CircuitParams& params) {
    const Real amp = std::pow(Real(2), Real(-0.5) * Real(n_));
    for (int layer = 0; layer < params.depth(); ++layer) {
      build_phases(static_cast<Real>(params.gammas[static_cast<std::size_t>(layer)]));
      if (layer == 0) {
        for (std::size_t z = 0; z < half_; ++z) {
          re_[z] = amp * phase_re_[z];
          im_[z] = amp * phase_im_[z];
        }
      } else {
        for (std::size_t z = 0; z < half_; ++z) {
          const Real a = re_[z], b = im_[z];
          re_[z] = a * phase_re_[z] - b * phase_im_[z];
          im_[z] = a * phase_im_[z] + b * phase_re_[z];
        }
      }
      mix(static_cast<Real>(params.betas[static_cast<std::size_t>(layer)]));
    }
  }

  /// sum over all 2^n basis states of p(z) w(z), for a flip-symmetric weight
  /// given on the stored half (indices < 2^{n-1}).
  template <typename Derived>
  double expectation(const Eigen::MatrixBase<Derived>& half_weights) const {
    double total = 0.0;
    for (std::size_t z = 0; z < half_; ++z)
      total += static_cast<double>(re_[z] * re_[z] + im_[z] * im_[z]) *
               static_cast<double>(half_weights[static_cast<Eigen::Index>(z)]);
    return 2.0 * total;
  }

  /// Born probabilities over all 2^n basis states.
  Vector probabilities() const {
    Vector probs(static_cast<Eigen::Index>(2 * half_));
    const std::size_t low = half_ - 1;
    for (std::size_t z = 0; z < half_; ++z) {
      const Real p = re_[z] * re_[z] + im_[z] * im_[z];
      probs[static_cast<Eigen::Index>(z)] = p;
      probs[static_cast<Eigen::Index>(half_ | (z ^ low))] = p;
    }
    return probs;
  }

  BasicStateVector<Real> state() const {
    BasicStateVector<Real> out(n_);
    auto& amps = out.amplitudes();
    const std::size_t low = half_ - 1;
    for (std::size_t z = 0; z < half_; ++z) {
      const std::complex<Real> a(re_[z], im_[z]);
      amps[static_cast<Eigen::Index>(z)] = a;
      amps[static_cast<Eigen::Index>(half_ | (z ^ low))] = a;
    }
    return out;
  }

 private:
  struct BackEdge {
    int vertex;
    double coupling;
  };

  // phase(z) = prod over retained edges (u, v) of exp(i gamma J s_u s_v), top spin fixed to +1.
  // Qubit q contributes f_q = prod_k u_k^{s_k} over its lower-index neighbors k; f_q is tabulated
  // by the neighbor bits, and s_q = -1 takes conj(f_q).
  void build_phases(Real gamma) {
    phase_re_[0] = Real(1);
    phase_im_[0] = Real(0);
    for (int q = 0; q < n_; ++q) {
      const auto& back = back_[static_cast<std::size_t>(q)];
      const std::size_t entries = std::size_t{1} << back.size();
      table_re_.assign(entries, Real(1));
      table_im_.assign(entries, Real(0));
      for (std::size_t k = 0; k < back.size(); ++k) {
        const Real ur = std::cos(gamma * Real(back[k].coupling));
        const Real ui = std::sin(gamma * Real(back[k].coupling));
        for (std::size_t idx = 0; idx < entries; ++idx) {
          const Real vi = ((idx >> k) & 1U) ? -ui : ui;
          const Real tr = table_re_[idx], ti = table_im_[idx];
          table_re_[idx] = tr * ur - ti * vi;
          table_im_[idx] = tr * vi + ti * ur;
        }
      }
      const std::size_t prefix = std::size_t{1} << q;
      const bool top = q == n_ - 1;
      const std::size_t count = top ? half_ : prefix;
      // The neighbor bits are constant on runs of 2^(lowest neighbor) consecutive z.
      int lowest = q;
      for (const auto& edge : back) lowest = std::min(lowest, edge.vertex);
      const std::size_t run = std::min(count, std::size_t{1} << lowest);
      Real* __restrict pre = phase_re_.data();
      Real* __restrict pim = phase_im_.data();
      for (std::size_t z0 = 0; z0 < count; z0 += run) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < back.size(); ++k) idx |= ((z0 >> back[k].vertex) & 1U) << k;
        const Real fr = table_re_[idx], fi = table_im_[idx];
        if (top) {
          for (std::size_t z = z0; z < z0 + run; ++z) {
            const Real pr = pre[z], pi = pim[z];
            pre[z] = pr * fr - pi * fi;
            pim[z] = pr * fi + pi * fr;
          }
        } else {
          for (std::size_t z = z0; z < z0 + run; ++z) {
            const Real pr = pre[z], pi = pim[z];
            pre[z] = pr * fr - pi * fi;
            pim[z] = pr * fi + pi * fr;
            pre[z + prefix] = pr * fr + pi * fi;
            pim[z + prefix] = pi * fr - pr * fi;
          }
        }
      }
    }
  }

  void mix(Real beta) {
    const Real c = std::cos(beta);
    const Real s = std::sin(beta);
    Real* __restrict re = re_.data();
    Real* __restrict im = im_.data();
    int first = 0;
    if (n_ >= 3) {
      // Qubits 0 and 1 together on each aligned group of four amplitudes.
      for (std::size_t g = 0; g < half_; g += 4) {
        Real r[4], i[4];
        for (int k = 0; k < 4; ++k) {
          r[k] = re[g + k];
          i[k] = im[g + k];
        }
        for (int stride : {1, 2}) {
          for (int k = 0; k < 4; ++k) {
            if (k & stride) continue;
            const Real a = r[k], b = i[k], x = r[k + stride], y = i[k + stride];
            r[k] = c * a - s * y;
            i[k] = c * b + s * x;
            r[k + stride] = c * x - s * b;
            i[k + stride] = c * y + s * a;
          }
        }
        for (int k = 0; k < 4; ++k) {
          re[g + k] = r[k];
          im[g + k] = i[k];
        }
      }
      first = 2;
    }
    for (int q = first; q + 1 < n_; ++q) {
      const std::size_t stride = std::size_t{1} << q;
      for (std::size_t block = 0; block < half_; block += 2 * stride) {
        Real* __restrict r0 = re + block;
        Real* __restrict i0 = im + block;
        Real* __restrict r1 = re + block + stride;
        Real* __restrict i1 = im + block + stride;
        for (std::size_t k = 0; k < stride; ++k) {
          const Real a = r0[k], b = i0[k], x = r1[k], y = i1[k];
          r0[k] = c * a - s * y;
          i0[k] = c * b + s * x;
          r1[k] = c * x - s * b;
          i1[k] = c * y + s * a;
        }
      }
    }
    // Top qubit: partner of z is ~z restricted to the stored half.
    const std::size_t low = half_ - 1;
    for (std::size_t z = 0; z < half_ / 2; ++z) {
      const std::size_t w = z ^ low;
      const Real a = re[z], b = im[z], x = re[w], y = im[w];
      re[z] = c * a - s * y;
      im[z] = c * b + s * x;
      re[w] = c * x - s * b;
      im[w] = c * y + s * a;
    }
    if (half_ == 1) {
      // n = 1: the only pair is (|0>, |1>) with equal amplitudes, so exp(i beta X) is a phase.
      const Real a = re[0], b = im[0];
      re[0] = c * a - s * b;
      im[0] = c * b + s * a;
    }
  }

  int n_;
  std::size_t half_ = 1;
  std::vector<std::vector<BackEdge>> back_;
  std::vector<Real> re_, im_, phase_re_, phase_im_, table_re_, table_im_;
};

}  // namespace qaoa
