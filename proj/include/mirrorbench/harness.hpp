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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mirrorbench/analysis.hpp"
#include "mirrorbench/io.hpp"
#include "mirrorbench/solvers.hpp"

namespace mirrorbench {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kCsvSchemaVersion = 1;

struct TopologySpec {
  int rows = 4;
  int cols = 8;
  std::vector<QubitId> dead_qubits;
  std::vector<Coupler> dead_couplers;
  // Bernoulli(probability) dead qubits drawn with their own seed, added to
  // the explicit list. 0 disables.
  double synthetic_dead_probability = 0.0;
  std::uint64_t synthetic_dead_seed = 0;

  ChimeraTopology build() const;
};

struct ProblemSize {
  int rows = 1;
  int cols = 1;
};

struct BackendSpec {
  std::string backend = "sa";  // exact | sa | sqa
  ScheduleConfig schedule;
  // Uniform offsets for every qubit of one half, merged into
  // schedule.offsets per problem. sqa only.
  std::optional<double> left_offset;
  std::optional<double> right_offset;

  std::string digest() const;
  ScheduleConfig schedule_for(const CompositeProblem& problem) const;
};

// JSON config document, see README for the schema.
struct ExperimentConfig {
  TopologySpec topology;
  std::vector<ProblemSize> sizes;
  int instances = 100;
  bool fields = false;
  MirrorSign mirror_sign = MirrorSign::ferro;
  // Signed multipliers of mirror_sign: M_k = mirror_sign * value, in units
  // of 1/28. The P_sym sweep uses every entry.
  std::vector<std::int32_t> mirror_strengths = {kScale};
  std::vector<BackendSpec> schedules = {BackendSpec{}};
  std::uint64_t reads = 100;
  std::uint64_t base_seed = 1;
  std::filesystem::path out_dir = "out";
  int workers = 1;
  bool save_artifacts = false;

  void validate() const;
  Json to_json() const;
  static ExperimentConfig from_json(const Json& doc);
};

// One batch of composites sampled by one backend.
struct BatchRun {
  std::vector<CompositeProblem> problems;
  std::vector<SampleSet> samples;
};

// Seeds: the instance batch of size index i uses base derive_seed(base_seed, i);
// instance k samples with derive_seed(instance.seed, kSamplerStream), so every
// schedule and mirror strength sees the same instances and sampler seeds.
inline constexpr std::uint64_t kSamplerStream = 0x5A3D;

BatchRun run_batch(const ExperimentConfig& config, std::size_t size_index, std::int32_t mirror_value,
                   const BackendSpec& backend);

SampleSet run_backend(const BackendSpec& backend, const CompositeProblem& problem,
                      std::uint64_t reads, std::uint64_t seed);

struct PsymRow {
  ProblemSize size;
  std::int32_t mirror_value = 0;
  std::string backend;
  PsymEstimate estimate;
};

struct HammingRow {
  ProblemSize size;
  std::int32_t mirror_value = 0;
  std::string backend;
  int sweeps = 0;
  // Empty columns with retained_instances == 0 mark a filtered-out group.
  HammingProfile profile;
  int retained_instances = 0;
};

struct StageTiming {
  std::string name;
  double seconds = 0.0;
};

struct ManifestFile {
  std::string path;  // relative to the output directory
  std::string sha256;
};

struct RunManifest {
  std::string config_digest;
  std::string tool_version = kToolVersion;
  std::vector<ManifestFile> files;
  std::vector<StageTiming> stages;

  Json to_json() const;
};

struct SweepOutput {
  std::vector<PsymRow> psym;
  std::vector<HammingRow> hamming;
  RunManifest manifest;
};

std::string psym_csv(const std::vector<PsymRow>& rows);
std::string hamming_csv(const std::vector<HammingRow>& rows);

// Each sweep writes its tables, gnuplot scripts and manifest.json into
// config.out_dir.
SweepOutput run_psym_sweep(const ExperimentConfig& config);
SweepOutput run_hamming_sweep(const ExperimentConfig& config);
SweepOutput run_schedule_sweep(const ExperimentConfig& config);

// Files listed in the manifest whose digest no longer matches (or which are
// missing); empty when the run verifies.
std::vector<std::string> verify_manifest(const std::filesystem::path& out_dir);

std::string sha256_hex(const std::string& bytes);

struct CheckReport {
  std::vector<SymmetryVerdict> verdicts;  // one per sample set entry
  SampleSet filtered;
  bool any_symmetric = false;
};

CheckReport answer_check(const CompositeProblem& problem, const SampleSet& samples);
// File form: ingests both documents (energies recomputed), writes
// check_report.json and filtered_samples.json under out_dir.
CheckReport answer_check(const std::filesystem::path& problem_file,
                         const std::filesystem::path& samples_file,
                         const std::filesystem::path& out_dir);

// Runs fn(0..count-1) on up to `workers` threads. Results must be written to
// per-index slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace mirrorbench
