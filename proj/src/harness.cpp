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

#include "mirrorbench/harness.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "mirrorbench/error.hpp"
#include "mirrorbench/rng.hpp"

namespace mirrorbench {

namespace {

using Clock = std::chrono::steady_clock;

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

MirrorSign sign_of(std::int32_t mirror_value, MirrorSign fallback) {
  if (mirror_value > 0) return MirrorSign::ferro;
  if (mirror_value < 0) return MirrorSign::antiferro;
  return fallback;
}

template <typename T>
T get_or(const Json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("config field '") + key + "': " + e.what());
  }
}

ScheduleConfig schedule_from_json(const Json& doc) {
  ScheduleConfig s;
  s.sweeps = get_or(doc, "sweeps", s.sweeps);
  s.beta_start = get_or(doc, "beta_start", s.beta_start);
  s.beta_end = get_or(doc, "beta_end", s.beta_end);
  s.trotter_slices = get_or(doc, "trotter_slices", s.trotter_slices);
  s.transverse_field_start = get_or(doc, "transverse_field_start", s.transverse_field_start);
  s.transverse_field_end = get_or(doc, "transverse_field_end", s.transverse_field_end);
  for (const auto& [q, o] : get_or(doc, "offsets", std::vector<std::pair<QubitId, double>>{})) {
    s.offsets[q] = o;
  }
  return s;
}

Json schedule_to_json(const BackendSpec& b) {
  const ScheduleConfig& s = b.schedule;
  Json offsets = Json::array();
  for (const auto& [q, o] : s.offsets) offsets.push_back({q, o});
  Json out = {{"backend", b.backend},
              {"sweeps", s.sweeps},
              {"beta_start", s.beta_start},
              {"beta_end", s.beta_end},
              {"trotter_slices", s.trotter_slices},
              {"transverse_field_start", s.transverse_field_start},
              {"transverse_field_end", s.transverse_field_end},
              {"offsets", offsets}};
  if (b.left_offset) out["left_offset"] = *b.left_offset;
  if (b.right_offset) out["right_offset"] = *b.right_offset;
  return out;
}

struct OutputWriter {
  std::filesystem::path dir;
  RunManifest manifest;

  void write(const std::string& relative, const std::string& text) {
    write_text_file(dir / relative, text);
    manifest.files.push_back({relative, sha256_hex(text)});
  }
  void finish() {
    std::sort(manifest.files.begin(), manifest.files.end(),
              [](const ManifestFile& a, const ManifestFile& b) { return a.path < b.path; });
    write_text_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");
  }
};

std::string size_label(const ProblemSize& s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

void save_artifacts(OutputWriter& out, const std::string& group, const BatchRun& run) {
  for (std::size_t k = 0; k < run.problems.size(); ++k) {
    const std::string stem = "artifacts/" + group + "/instance_" + std::to_string(k);
    out.write(stem + ".composite.json", dump_canonical(composite_to_json(run.problems[k])));
    out.write(stem + ".samples.json", dump_canonical(sample_set_to_json(run.samples[k])));
  }
}

std::string psym_plot_script() {
  return "# gnuplot script for psym.csv\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set logscale y\n"
         "set xlabel 'problem width N (unit-cell columns)'\n"
         "set ylabel 'P_sym'\n"
         "set terminal pngcairo size 800,600\n"
         "set output 'psym.png'\n"
         "plot 'psym.csv' using 2:7:8:9 with yerrorlines title 'P_sym (Wilson 95%)'\n";
}

std::string hamming_plot_script() {
  return "# gnuplot script for hamming.csv\n"
         "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set xlabel 'column index from the mirror plane'\n"
         "set ylabel 'normalized Hamming distance'\n"
         "set yrange [0:1]\n"
         "set terminal pngcairo size 800,600\n"
         "set output 'hamming.png'\n"
         "plot 'hamming.csv' using 6:7:8 with yerrorbars title 'column mean'\n";
}

HammingRow hamming_row(const ProblemSize& size, std::int32_t mirror_value, const BackendSpec& backend,
                       const BatchRun& run) {
  HammingRow row{size, mirror_value, backend.digest(), backend.schedule.sweeps, {}, 0};
  try {
    row.profile = hamming_profile(run.problems, run.samples, true);
    row.retained_instances = row.profile.instance_count;
  } catch (const ValidationError&) {
    std::cerr << "warning: " << size_label(size) << " M_k=" << mirror_value << " " << row.backend
              << ": asymmetric-only filter retained no instances\n";
  }
  return row;
}

}  // namespace

ChimeraTopology TopologySpec::build() const {
  std::vector<QubitId> dead = dead_qubits;
  if (synthetic_dead_probability > 0.0) {
    const auto extra = sample_dead_qubits(rows, cols, synthetic_dead_probability, synthetic_dead_seed);
    dead.insert(dead.end(), extra.begin(), extra.end());
  }
  return ChimeraTopology(rows, cols, std::move(dead), dead_couplers);
}

std::string BackendSpec::digest() const {
  std::string base;
  if (backend == "exact") {
    base = "exact(gray)";
  } else if (backend == "sa") {
    base = sa_digest(schedule);
  } else {
    base = sqa_digest(schedule);
  }
  if (left_offset) base += "+left_offset=" + fixed(*left_offset, 7);
  if (right_offset) base += "+right_offset=" + fixed(*right_offset, 7);
  return base;
}

ScheduleConfig BackendSpec::schedule_for(const CompositeProblem& problem) const {
  ScheduleConfig out = schedule;
  if (!left_offset && !right_offset) return out;
  for (QubitId q : problem.qubits()) {
    const auto& half = problem.in_left_half(q) ? left_offset : right_offset;
    if (half && !out.offsets.contains(q)) out.offsets[q] = *half;
  }
  return out;
}

void ExperimentConfig::validate() const {
  const ChimeraTopology topo = topology.build();
  const MirrorPlane plane = MirrorPlane::centered(topo);
  if (sizes.empty()) throw ValidationError("config needs at least one problem size");
  for (const ProblemSize& s : sizes) {
    if (s.rows < 1 || s.rows > topo.rows() || s.cols < 1 || s.cols > plane.split_col) {
      throw ValidationError("problem size " + size_label(s) + " does not fit the " +
                            std::to_string(topo.rows()) + "x" + std::to_string(plane.split_col) +
                            " half-grid");
    }
  }
  if (instances < 1) throw ValidationError("instances must be at least 1");
  if (reads < 1) throw ValidationError("reads must be at least 1");
  if (workers < 1) throw ValidationError("workers must be at least 1");
  if (mirror_strengths.empty()) throw ValidationError("mirror_strengths must not be empty");
  for (std::int32_t m : mirror_strengths) {
    if (std::abs(m) > kScale) {
      throw ValidationError("mirror strength " + std::to_string(m) + " outside [-28, 28]");
    }
  }
  if (schedules.empty()) throw ValidationError("config needs at least one schedule");
  for (const BackendSpec& b : schedules) {
    if (b.backend != "exact" && b.backend != "sa" && b.backend != "sqa") {
      throw ValidationError("unknown backend '" + b.backend + "' (expected exact, sa or sqa)");
    }
    b.schedule.validate();
    const bool has_offsets = !b.schedule.offsets.empty() || b.left_offset || b.right_offset;
    if (has_offsets && b.backend != "sqa") {
      throw ValidationError("annealing offsets require the sqa backend, not '" + b.backend + "'");
    }
    for (const auto& o : {b.left_offset, b.right_offset}) {
      if (o && !(*o >= -1.0 && *o <= 1.0)) throw ValidationError("half offsets must lie in [-1, 1]");
    }
  }
}

Json ExperimentConfig::to_json() const {
  Json dead_couplers = Json::array();
  for (const auto& c : topology.dead_couplers) dead_couplers.push_back({c.a, c.b});
  Json sizes_doc = Json::array();
  for (const auto& s : sizes) sizes_doc.push_back({s.rows, s.cols});
  Json schedules_doc = Json::array();
  for (const auto& b : schedules) schedules_doc.push_back(schedule_to_json(b));
  return {{"topology",
           {{"rows", topology.rows},
            {"cols", topology.cols},
            {"dead_qubits", topology.dead_qubits},
            {"dead_couplers", dead_couplers},
            {"synthetic_dead",
             {{"probability", topology.synthetic_dead_probability}, {"seed", topology.synthetic_dead_seed}}}}},
          {"sizes", sizes_doc},
          {"instances", instances},
          {"fields", fields},
          {"mirror_sign", sign_value(mirror_sign)},
          {"mirror_strengths", mirror_strengths},
          {"schedules", schedules_doc},
          {"reads", reads},
          {"base_seed", base_seed},
          {"out_dir", out_dir.string()},
          {"workers", workers},
          {"save_artifacts", save_artifacts}};
}

ExperimentConfig ExperimentConfig::from_json(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("config document must be a JSON object");
  ExperimentConfig c;
  if (doc.contains("topology")) {
    const Json& t = doc.at("topology");
    c.topology.rows = get_or(t, "rows", c.topology.rows);
    c.topology.cols = get_or(t, "cols", c.topology.cols);
    c.topology.dead_qubits = get_or(t, "dead_qubits", std::vector<QubitId>{});
    for (const auto& [a, b] : get_or(t, "dead_couplers", std::vector<std::pair<QubitId, QubitId>>{})) {
      c.topology.dead_couplers.push_back(Coupler::between(a, b));
    }
    if (t.contains("synthetic_dead")) {
      const Json& sd = t.at("synthetic_dead");
      c.topology.synthetic_dead_probability = get_or(sd, "probability", 0.0);
      c.topology.synthetic_dead_seed = get_or(sd, "seed", std::uint64_t{0});
    }
  }
  for (const auto& [r, n] : get_or(doc, "sizes", std::vector<std::pair<int, int>>{})) {
    c.sizes.push_back({r, n});
  }
  c.instances = get_or(doc, "instances", c.instances);
  c.fields = get_or(doc, "fields", c.fields);
  const int sign = get_or(doc, "mirror_sign", 1);
  if (sign != 1 && sign != -1) throw ValidationError("mirror_sign must be +1 or -1");
  c.mirror_sign = static_cast<MirrorSign>(sign);
  c.mirror_strengths = get_or(doc, "mirror_strengths", c.mirror_strengths);
  if (doc.contains("schedules")) {
    c.schedules.clear();
    for (const Json& s : doc.at("schedules")) {
      BackendSpec b;
      b.backend = get_or(s, "backend", b.backend);
      b.schedule = schedule_from_json(s);
      if (s.contains("left_offset")) b.left_offset = get_or(s, "left_offset", 0.0);
      if (s.contains("right_offset")) b.right_offset = get_or(s, "right_offset", 0.0);
      c.schedules.push_back(std::move(b));
    }
  }
  c.reads = get_or(doc, "reads", c.reads);
  c.base_seed = get_or(doc, "base_seed", c.base_seed);
  c.out_dir = get_or(doc, "out_dir", c.out_dir.string());
  c.workers = get_or(doc, "workers", c.workers);
  c.save_artifacts = get_or(doc, "save_artifacts", c.save_artifacts);
  c.validate();
  return c;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

SampleSet run_backend(const BackendSpec& backend, const CompositeProblem& problem,
                      std::uint64_t reads, std::uint64_t seed) {
  if (backend.backend == "exact") return solve_exact(problem);
  const ScheduleConfig schedule = backend.schedule_for(problem);
  if (backend.backend == "sa") return solve_sa(problem, schedule, reads, seed);
  if (backend.backend == "sqa") {
    SampleSet out = solve_sqa(problem, schedule, reads, seed);
    out.digest = backend.digest();
    return out;
  }
  throw ValidationError("unknown backend '" + backend.backend + "'");
}

BatchRun run_batch(const ExperimentConfig& config, std::size_t size_index, std::int32_t mirror_value,
                   const BackendSpec& backend) {
  const ProblemSize size = config.sizes.at(size_index);
  const ProblemRegion region(config.topology.build(), size.rows, size.cols);
  const InstanceBatch batch = generate_batch(region, config.instances, config.fields,
                                             derive_seed(config.base_seed, size_index));
  const std::int32_t m = sign_value(config.mirror_sign) * mirror_value;
  const MirrorSign sign = sign_of(m, config.mirror_sign);

  const std::size_t n = batch.instances.size();
  std::vector<std::optional<CompositeProblem>> problems(n);
  std::vector<SampleSet> samples(n);
  parallel_for(n, config.workers, [&](std::size_t k) {
    const IsingInstance& instance = batch.instances[k];
    try {
      problems[k].emplace(build_composite(instance, m, sign));
      samples[k] = ingest(*problems[k], run_backend(backend, *problems[k], config.reads,
                                                    derive_seed(instance.seed, kSamplerStream)));
    } catch (const ValidationError& e) {
      throw ValidationError("instance " + std::to_string(k) + " (seed " + std::to_string(instance.seed) +
                            "): " + e.what());
    }
  });
  BatchRun run;
  run.samples = std::move(samples);
  run.problems.reserve(n);
  for (auto& p : problems) run.problems.push_back(std::move(*p));
  return run;
}

Json RunManifest::to_json() const {
  Json files_doc = Json::array();
  for (const auto& f : files) files_doc.push_back({{"path", f.path}, {"sha256", f.sha256}});
  Json stages_doc = Json::array();
  for (const auto& s : stages) stages_doc.push_back({{"stage", s.name}, {"seconds", s.seconds}});
  return {{"config_digest", config_digest},
          {"tool_version", tool_version},
          {"files", files_doc},
          {"stages", stages_doc}};
}

std::string psym_csv(const std::vector<PsymRow>& rows) {
  std::string out = "# mirrorbench psym schema " + std::to_string(kCsvSchemaVersion) + "\n";
  out += "rows,cols,M_k,backend,trials,successes,p_hat,ci_low,ci_high\n";
  for (const PsymRow& r : rows) {
    out += std::to_string(r.size.rows) + "," + std::to_string(r.size.cols) + "," +
           std::to_string(r.mirror_value) + "," + csv_quote(r.backend) + "," +
           std::to_string(r.estimate.trials) + "," + std::to_string(r.estimate.successes) + "," +
           fixed(r.estimate.p_hat) + "," + fixed(r.estimate.ci_low) + "," + fixed(r.estimate.ci_high) +
           "\n";
  }
  return out;
}

std::string hamming_csv(const std::vector<HammingRow>& rows) {
  std::string out = "# mirrorbench hamming schema " + std::to_string(kCsvSchemaVersion) + "\n";
  out += "rows,cols,M_k,backend,sweeps,column_index,mean,stderr,qubit_count,instances\n";
  for (const HammingRow& r : rows) {
    const std::string key = std::to_string(r.size.rows) + "," + std::to_string(r.size.cols) + "," +
                            std::to_string(r.mirror_value) + "," + csv_quote(r.backend) + "," +
                            std::to_string(r.sweeps) + ",";
    if (r.retained_instances == 0) {
      // Warning row: nothing survived the asymmetric-only filter.
      out += key + "0,nan,nan,0,0\n";
      continue;
    }
    for (const HammingColumn& c : r.profile.columns) {
      out += key + std::to_string(c.index) + "," + fixed(c.mean) + "," + fixed(c.std_error) + "," +
             std::to_string(c.qubit_count) + "," + std::to_string(r.retained_instances) + "\n";
    }
  }
  return out;
}

namespace {

template <typename Body>
void timed(RunManifest& manifest, const std::string& name, Body&& body) {
  const auto start = Clock::now();
  body();
  manifest.stages.push_back({name, std::chrono::duration<double>(Clock::now() - start).count()});
}

OutputWriter open_output(const ExperimentConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.out_dir);
  OutputWriter out{config.out_dir, {}};
  out.manifest.config_digest = sha256_hex(config.to_json().dump());
  return out;
}

std::string group_name(const ProblemSize& size, std::int32_t m, std::size_t schedule_index) {
  return size_label(size) + "_M" + std::to_string(m) + "_s" + std::to_string(schedule_index);
}

}  // namespace

SweepOutput run_psym_sweep(const ExperimentConfig& config) {
  OutputWriter out = open_output(config);
  SweepOutput result;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    for (std::int32_t strength : config.mirror_strengths) {
      for (std::size_t b = 0; b < config.schedules.size(); ++b) {
        const BackendSpec& backend = config.schedules[b];
        const std::int32_t m = sign_value(config.mirror_sign) * strength;
        timed(out.manifest, "psym " + group_name(config.sizes[i], m, b), [&] {
          const BatchRun run = run_batch(config, i, strength, backend);
          result.psym.push_back({config.sizes[i], m, backend.digest(),
                                 estimate_psym(run.problems, run.samples)});
          if (config.save_artifacts) save_artifacts(out, group_name(config.sizes[i], m, b), run);
        });
      }
    }
  }
  out.write("psym.csv", psym_csv(result.psym));
  out.write("psym.gp", psym_plot_script());
  out.finish();
  result.manifest = out.manifest;
  return result;
}

SweepOutput run_hamming_sweep(const ExperimentConfig& config) {
  OutputWriter out = open_output(config);
  SweepOutput result;
  const BackendSpec& backend = config.schedules.front();
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    for (std::int32_t strength : config.mirror_strengths) {
      const std::int32_t m = sign_value(config.mirror_sign) * strength;
      timed(out.manifest, "hamming " + group_name(config.sizes[i], m, 0), [&] {
        const BatchRun run = run_batch(config, i, strength, backend);
        result.hamming.push_back(hamming_row(config.sizes[i], m, backend, run));
        result.psym.push_back({config.sizes[i], m, backend.digest(), estimate_psym(run.problems, run.samples)});
        if (config.save_artifacts) save_artifacts(out, group_name(config.sizes[i], m, 0), run);
      });
    }
  }
  out.write("hamming.csv", hamming_csv(result.hamming));
  out.write("hamming.gp", hamming_plot_script());
  out.write("psym.csv", psym_csv(result.psym));
  out.finish();
  result.manifest = out.manifest;
  return result;
}

SweepOutput run_schedule_sweep(const ExperimentConfig& config) {
  if (config.schedules.size() < 2) {
    throw ValidationError("a schedule sweep needs at least two schedules");
  }
  OutputWriter out = open_output(config);
  SweepOutput result;
  const std::int32_t strength = config.mirror_strengths.front();
  const std::int32_t m = sign_value(config.mirror_sign) * strength;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    for (std::size_t b = 0; b < config.schedules.size(); ++b) {
      const BackendSpec& backend = config.schedules[b];
      timed(out.manifest, "schedule " + group_name(config.sizes[i], m, b), [&] {
        const BatchRun run = run_batch(config, i, strength, backend);
        result.hamming.push_back(hamming_row(config.sizes[i], m, backend, run));
        result.psym.push_back({config.sizes[i], m, backend.digest(), estimate_psym(run.problems, run.samples)});
        if (config.save_artifacts) save_artifacts(out, group_name(config.sizes[i], m, b), run);
      });
    }
  }
  out.write("hamming.csv", hamming_csv(result.hamming));
  out.write("hamming.gp", hamming_plot_script());
  out.write("psym.csv", psym_csv(result.psym));
  out.finish();
  result.manifest = out.manifest;
  return result;
}

std::vector<std::string> verify_manifest(const std::filesystem::path& out_dir) {
  const Json doc = read_json_file(out_dir / "manifest.json");
  std::vector<std::string> bad;
  for (const Json& f : doc.at("files")) {
    const auto path = f.at("path").get<std::string>();
    const auto full = out_dir / path;
    if (!std::filesystem::exists(full) || sha256_hex(read_text_file(full)) != f.at("sha256").get<std::string>()) {
      bad.push_back(path);
    }
  }
  return bad;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

CheckReport answer_check(const CompositeProblem& problem, const SampleSet& samples) {
  const SampleSet checked = ingest(problem, samples);
  CheckReport report;
  for (const Sample& s : checked.entries) {
    report.verdicts.push_back(check_symmetry(problem, to_config(problem, checked, s)));
    report.any_symmetric = report.any_symmetric || report.verdicts.back().symmetric;
  }
  report.filtered = symmetry_filter(problem, checked);
  return report;
}

CheckReport answer_check(const std::filesystem::path& problem_file,
                         const std::filesystem::path& samples_file,
                         const std::filesystem::path& out_dir) {
  const CompositeProblem problem = composite_from_json(read_json_file(problem_file));
  const SampleSet samples = ingest(problem, sample_set_from_json(read_json_file(samples_file)));
  CheckReport report = answer_check(problem, samples);

  Json entries = Json::array();
  for (std::size_t i = 0; i < samples.entries.size(); ++i) {
    const Sample& s = samples.entries[i];
    entries.push_back({{"spins", to_bitstring(s.spins)},
                       {"energy", s.energy},
                       {"occurrences", s.occurrences},
                       {"symmetric", report.verdicts[i].symmetric},
                       {"violating_qubits", report.verdicts[i].violating_qubits}});
  }
  const Json doc = {{"mode", problem.mirror_sign() == MirrorSign::ferro ? "ferro" : "antiferro"},
                    {"verdict", report.any_symmetric ? "some symmetric" : "none symmetric"},
                    {"entries", entries}};
  write_text_file(out_dir / "check_report.json", doc.dump(2) + "\n");
  write_text_file(out_dir / "filtered_samples.json", dump_canonical(sample_set_to_json(report.filtered)));
  return report;
}

}  // namespace mirrorbench
