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
#include <span>
#include <vector>

#include "mirrorbench/embedding.hpp"
#include "mirrorbench/solvers.hpp"

namespace mirrorbench {

struct SymmetryVerdict {
  bool symmetric = false;
  MirrorSign mode = MirrorSign::ferro;
  // Left-half qubits whose mirror partner breaks the constraint, sorted.
  std::vector<QubitId> violating_qubits;
};

// Ferro: S_i == S_mirror(i) for every functional left-half qubit.
// Antiferro: S_i == -S_mirror(i).
SymmetryVerdict check_symmetry(const CompositeProblem& problem, const SpinConfig& config);
bool is_symmetric(const CompositeProblem& problem, const SampleSet& set, const Sample& sample);

struct PsymEstimate {
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

// Wilson score interval; the returned estimate carries p_hat and both bounds.
PsymEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

// Instance k succeeds iff some lowest-energy entry of sample_sets[k] is
// symmetric.
PsymEstimate estimate_psym(std::span<const CompositeProblem> problems,
                           std::span<const SampleSet> sample_sets);

struct HammingColumn {
  int index = 0;  // 1 = column touching the plane
  double mean = 0.0;
  double std_error = 0.0;
  int qubit_count = 0;
};

struct HammingProfile {
  std::vector<HammingColumn> columns;
  int instance_count = 0;  // instances that passed the filter
  int solution_count = 0;  // distinct lowest-energy solutions averaged over
};

// Per-column normalized distance of one configuration: for column c, the
// fraction of functional G qubits in that column disagreeing with their
// mirror images. Columns without functional qubits are omitted.
std::vector<HammingColumn> column_distances(const CompositeProblem& problem, const SpinConfig& config);

// Averages column distances over the lowest-energy solutions of every
// retained instance. Within an instance, solutions are weighted by their
// occurrences; instances are weighted equally and the standard error is the
// spread across instances over sqrt(instances).
//
// With asymmetric_only, instances having any symmetric lowest-energy solution
// are dropped. Throws ValidationError if no instance remains.
HammingProfile hamming_profile(std::span<const CompositeProblem> problems,
                               std::span<const SampleSet> sample_sets, bool asymmetric_only);

// Entries whose configuration satisfies the mirror constraint. reads becomes
// the retained occurrence total, so the output is itself a valid sample set.
SampleSet symmetry_filter(const CompositeProblem& problem, const SampleSet& set);

}  // namespace mirrorbench
