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

#include "mirrorbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mirrorbench/error.hpp"

namespace mirrorbench {

namespace {

void require_same_length(std::span<const CompositeProblem> problems,
                         std::span<const SampleSet> sample_sets) {
  if (problems.size() != sample_sets.size()) {
    throw ValidationError("batch has " + std::to_string(problems.size()) + " problems but " +
                          std::to_string(sample_sets.size()) + " sample sets");
  }
}

}  // namespace

SymmetryVerdict check_symmetry(const CompositeProblem& problem, const SpinConfig& config) {
  if (config.size() != problem.topology().num_qubits()) {
    throw ValidationError("spin configuration does not match the problem topology");
  }
  SymmetryVerdict verdict{true, problem.mirror_sign(), {}};
  const int sign = sign_value(problem.mirror_sign());
  for (QubitId q : problem.region().qubits()) {
    const QubitId m = problem.mirror_of(q);
    if (!config.assigned(q) || !config.assigned(m)) {
      throw ValidationError("spin configuration misses functional qubit " +
                            std::to_string(config.assigned(q) ? m : q));
    }
    if (config[q] != sign * config[m]) verdict.violating_qubits.push_back(q);
  }
  verdict.symmetric = verdict.violating_qubits.empty();
  return verdict;
}

bool is_symmetric(const CompositeProblem& problem, const SampleSet& set, const Sample& sample) {
  return check_symmetry(problem, to_config(problem, set, sample)).symmetric;
}

PsymEstimate wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw ValidationError("P_sym needs at least one trial");
  if (successes > trials) throw ValidationError("more successes than trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  PsymEstimate out{successes, trials, p, std::max(0.0, center - half), std::min(1.0, center + half)};
  // Rounding can push a bound a hair past p_hat at the extremes.
  out.ci_low = std::min(out.ci_low, p);
  out.ci_high = std::max(out.ci_high, p);
  return out;
}

PsymEstimate estimate_psym(std::span<const CompositeProblem> problems,
                           std::span<const SampleSet> sample_sets) {
  require_same_length(problems, sample_sets);
  std::uint64_t successes = 0;
  for (std::size_t k = 0; k < problems.size(); ++k) {
    for (const Sample& s : lowest_energy_entries(sample_sets[k])) {
      if (is_symmetric(problems[k], sample_sets[k], s)) {
        ++successes;
        break;
      }
    }
  }
  return wilson_interval(successes, problems.size());
}

std::vector<HammingColumn> column_distances(const CompositeProblem& problem, const SpinConfig& config) {
  const ProblemRegion& region = problem.region();
  std::vector<int> differing(static_cast<std::size_t>(region.cols()) + 1, 0);
  std::vector<int> counted(differing.size(), 0);
  for (QubitId q : region.qubits()) {
    const QubitId m = problem.mirror_of(q);
    if (!config.assigned(q) || !config.assigned(m)) {
      throw ValidationError("spin configuration misses functional qubit " +
                            std::to_string(config.assigned(q) ? m : q));
    }
    const auto c = static_cast<std::size_t>(column_of(problem.topology(), problem.plane(), q));
    ++counted[c];
    if (config[q] != config[m]) ++differing[c];
  }
  std::vector<HammingColumn> out;
  for (std::size_t c = 1; c < counted.size(); ++c) {
    if (counted[c] == 0) continue;
    out.push_back({static_cast<int>(c), static_cast<double>(differing[c]) / counted[c], 0.0, counted[c]});
  }
  return out;
}

HammingProfile hamming_profile(std::span<const CompositeProblem> problems,
                               std::span<const SampleSet> sample_sets, bool asymmetric_only) {
  require_same_length(problems, sample_sets);
  // Per-instance means, keyed by column index.
  std::vector<std::vector<double>> per_column;
  std::vector<int> qubit_counts;
  HammingProfile profile;
  for (std::size_t k = 0; k < problems.size(); ++k) {
    const auto lowest = lowest_energy_entries(sample_sets[k]);
    if (asymmetric_only &&
        std::any_of(lowest.begin(), lowest.end(),
                    [&](const Sample& s) { return is_symmetric(problems[k], sample_sets[k], s); })) {
      continue;
    }
    std::vector<double> sums;
    std::vector<int> counts;
    double weight = 0.0;
    for (const Sample& s : lowest) {
      const auto w = static_cast<double>(s.occurrences);
      for (const HammingColumn& col : column_distances(problems[k], to_config(problems[k], sample_sets[k], s))) {
        const auto c = static_cast<std::size_t>(col.index);
        if (sums.size() <= c) {
          sums.resize(c + 1, 0.0);
          counts.resize(c + 1, 0);
        }
        sums[c] += w * col.mean;
        counts[c] = col.qubit_count;
      }
      weight += w;
    }
    if (per_column.size() < sums.size()) {
      per_column.resize(sums.size());
      qubit_counts.resize(sums.size(), 0);
    }
    for (std::size_t c = 1; c < sums.size(); ++c) {
      if (counts[c] == 0) continue;
      per_column[c].push_back(sums[c] / weight);
      qubit_counts[c] = std::max(qubit_counts[c], counts[c]);
    }
    ++profile.instance_count;
    profile.solution_count += static_cast<int>(lowest.size());
  }
  if (profile.instance_count == 0) {
    throw ValidationError(asymmetric_only
                              ? "asymmetric-only filter retained no instances"
                              : "hamming profile needs at least one instance");
  }
  for (std::size_t c = 1; c < per_column.size(); ++c) {
    const auto& values = per_column[c];
    if (values.empty()) continue;
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double std_error = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    profile.columns.push_back({static_cast<int>(c), mean, std_error, qubit_counts[c]});
  }
  return profile;
}

SampleSet symmetry_filter(const CompositeProblem& problem, const SampleSet& set) {
  SampleSet out{set.variables, {}, 0, set.backend, set.digest, set.seed};
  for (const Sample& s : set.entries) {
    if (is_symmetric(problem, set, s)) {
      out.entries.push_back(s);
      out.reads += s.occurrences;
    }
  }
  return out;
}

}  // namespace mirrorbench
