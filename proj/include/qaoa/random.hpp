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

#include <cstdint>
#include <random>

namespace qaoa {

/// SplitMix64 finalizer applied to (base, stream). Used to derive independent
/// seeds for instance k of a batch, for per-mask optimizer runs, and for the
/// per-sample draws of the gamma calibration.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Top 53 bits to [0, 1). Written out so draws do not depend on the standard
// library's distribution implementation.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double low, double high) {
  return low + (high - low) * uniform_unit(rng);
}

// Uniform on the open interval (-1, 1).
inline double uniform_symmetric_open(Rng& rng) {
  for (;;) {
    const double u = 2.0 * uniform_unit(rng) - 1.0;
    if (u != -1.0) return u;
  }
}

}  // namespace qaoa
