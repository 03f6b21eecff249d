// Copyright 2026 The mirrorbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mirrorbench/topology.hpp"

namespace mirrorbench {

// All couplings, fields and energies are integers in units of 1/28.
using Energy = std::int64_t;

inline constexpr int kScale = 28;

// The Sidon set S_28 scaled by 28, both signs.
inline constexpr std::array<std::int32_t, 8> kSidonValues = {-28, -19, -13, -8, 8, 13, 19, 28};

bool is_sidon_value(std::int32_t v) noexcept;

struct CouplingTerm {
  Coupler coupler;
  std::int32_t value = 0;
  friend bool operator==(const CouplingTerm&, const CouplingTerm&) = default;
};

struct FieldTerm {
  QubitId qubit = 0;
  std::int32_t value = 0;
  friend bool operator==(const FieldTerm&, const FieldTerm&) = default;
};

// Spin assignment indexed by qubit id over a whole topology. 0 marks a qubit
// the configuration does not cover.
class SpinConfig {
 public:
  SpinConfig() = default;
  explicit SpinConfig(int num_qubits) : spins_(static_cast<std::size_t>(num_qubits), 0) {}

  int size() const noexcept { return static_cast<int>(spins_.size()); }
  std::int8_t operator[](QubitId q) const { return spins_.at(static_cast<std::size_t>(q)); }
  void set(QubitId q, int spin) { spins_.at(static_cast<std::size_t>(q)) = static_cast<std::int8_t>(spin); }
  void flip(QubitId q) { set(q, -(*this)[q]); }
  bool assigned(QubitId q) const { return (*this)[q] == 1 || (*this)[q] == -1; }

  friend bool operator==(const SpinConfig&, const SpinConfig&) = default;

 private:
  std::vector<std::int8_t> spins_;
};

// Ising problem on a region G:  H = -sum J_ij S_i S_j - sum h_i S_i.
// Couplings cover exactly the functional couplers of the region and fields
// exactly its functional qubits (zeros included), both sorted.
struct IsingInstance {
  ProblemRegion region;
  std::vector<CouplingTerm> couplings;
  std::vector<FieldTerm> fields;
  std::uint64_t seed = 0;

  // Throws ValidationError if the terms do not match the region's functional
  // sets or if any value falls outside the Sidon set (0 allowed for fields).
  void validate() const;

  friend bool operator==(const IsingInstance&, const IsingInstance&) = default;
};

// Couplings are drawn first in coupler order, then fields in qubit order,
// all from one SplitMix64 stream seeded with `seed`.
IsingInstance generate_instance(const ProblemRegion& region, bool with_fields, std::uint64_t seed);

Energy energy(const IsingInstance& instance, const SpinConfig& config);

struct InstanceBatch {
  std::vector<IsingInstance> instances;
  bool with_fields = false;
  std::uint64_t base_seed = 0;
};

// Instance k is generate_instance(region, with_fields, derive_seed(base_seed, k)).
InstanceBatch generate_batch(const ProblemRegion& region, int count, bool with_fields,
                             std::uint64_t base_seed);

}  // namespace mirrorbench
