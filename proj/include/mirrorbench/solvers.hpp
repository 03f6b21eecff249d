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

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mirrorbench/embedding.hpp"
#include "mirrorbench/instances.hpp"

namespace mirrorbench {

// Compact Ising model over variables 0..n-1 (CSR adjacency), the form every
// sampler backend works on. Variable v corresponds to qubit variables[v].
struct IsingModel {
  std::vector<QubitId> variables;
  std::vector<std::int32_t> fields;
  std::vector<std::int32_t> offsets;  // size n + 1
  std::vector<std::int32_t> neighbors;
  std::vector<std::int32_t> weights;

  int size() const noexcept { return static_cast<int>(variables.size()); }
  Energy energy(std::span<const std::int8_t> spins) const;

  // Mirror couplings are folded into the adjacency like any other coupler.
  static IsingModel from_composite(const CompositeProblem& problem);
};

// One distinct configuration with its exact energy. spins[v] belongs to
// SampleSet::variables[v].
struct Sample {
  std::vector<std::int8_t> spins;
  Energy energy = 0;
  std::uint64_t occurrences = 0;
  friend bool operator==(const Sample&, const Sample&) = default;
};

// Entries are kept distinct and sorted by energy, ties broken
// lexicographically over the spin vector with +1 ordered before -1.
struct SampleSet {
  std::vector<QubitId> variables;
  std::vector<Sample> entries;
  std::uint64_t reads = 0;
  std::string backend;
  std::string digest;
  std::uint64_t seed = 0;

  bool empty() const noexcept { return entries.empty(); }
  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

bool canonical_less(const Sample& x, const Sample& y) noexcept;

// Merges duplicate configurations (summing occurrences) and sorts.
void canonicalize(SampleSet& set);

// Bit string with '0' for +1 and '1' for -1, in variable order. Sorting these
// strings reproduces the canonical tie order.
std::string to_bitstring(std::span<const std::int8_t> spins);
std::vector<std::int8_t> from_bitstring(const std::string& bits);

SpinConfig to_config(const CompositeProblem& problem, const SampleSet& set, const Sample& sample);

// Revalidates a sample set against a problem: the variables must be the
// problem's functional qubits, every energy must equal composite_energy
// exactly and occurrences must sum to reads. Returns the canonicalized set.
SampleSet ingest(const CompositeProblem& problem, SampleSet set);

struct ScheduleConfig {
  int sweeps = 1000;
  // Inverse temperature per integer energy unit (1/28 of a coupling unit).
  double beta_start = 0.1;
  double beta_end = 5.0;
  // Normalized per-qubit schedule offsets in [-1, 1]; only the simulated
  // quantum backend accepts them.
  std::map<QubitId, double> offsets;
  int trotter_slices = 16;
  // Transverse field in integer energy units.
  double transverse_field_start = 84.0;
  double transverse_field_end = 0.28;

  void validate() const;
  friend bool operator==(const ScheduleConfig&, const ScheduleConfig&) = default;
};

std::string sa_digest(const ScheduleConfig& schedule);
std::string sqa_digest(const ScheduleConfig& schedule);

// Largest problem the exhaustive backend accepts.
inline constexpr int kMaxExactQubits = 28;

// All global minima via Gray-code enumeration, each with occurrences = 1.
SampleSet solve_exact(const IsingModel& model);
SampleSet solve_exact(const CompositeProblem& problem);

// `reads` independent Metropolis annealing runs over a geometric beta ladder,
// read r seeded with derive_seed(seed, r).
SampleSet solve_sa(const IsingModel& model, const ScheduleConfig& schedule, std::uint64_t reads,
                   std::uint64_t seed);
SampleSet solve_sa(const CompositeProblem& problem, const ScheduleConfig& schedule,
                   std::uint64_t reads, std::uint64_t seed);

// Path-integral Monte Carlo of the transverse-field Ising model with the
// field ramped from transverse_field_start to transverse_field_end at fixed
// beta_end. A qubit with offset o follows the ramp at clamp(s + o, 0, 1).
SampleSet solve_sqa(const IsingModel& model, const ScheduleConfig& schedule, std::uint64_t reads,
                    std::uint64_t seed);
SampleSet solve_sqa(const CompositeProblem& problem, const ScheduleConfig& schedule,
                    std::uint64_t reads, std::uint64_t seed);

// Every distinct entry attaining the minimum energy of the set.
std::vector<Sample> lowest_energy_entries(const SampleSet& set);

}  // namespace mirrorbench
