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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "mirrorbench/error.hpp"

using namespace mirrorbench;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("mirrorbench_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_sa_config(const fs::path& out) {
  ExperimentConfig c;
  c.topology.rows = 2;
  c.topology.cols = 6;
  c.sizes = {{2, 1}, {2, 2}, {2, 3}};
  c.instances = 12;
  c.reads = 8;
  c.schedules.front().schedule.sweeps = 30;
  c.base_seed = 2718;
  c.out_dir = out;
  return c;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    // Backend digests contain commas and arrive double-quoted.
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (char ch : line) {
      if (ch == '"') {
        quoted = !quoted;
      } else if (ch == ',' && !quoted) {
        cells.emplace_back();
      } else {
        cells.back() += ch;
      }
    }
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MIRRORBENCH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(ExperimentConfig, JsonRoundTrip) {
  ExperimentConfig c = small_sa_config("somewhere");
  c.topology.dead_qubits = {3, 40};
  c.topology.dead_couplers = {Coupler::between(0, 4)};
  c.topology.synthetic_dead_probability = 0.02;
  c.topology.synthetic_dead_seed = 5;
  c.mirror_sign = MirrorSign::antiferro;
  c.mirror_strengths = {-28, 0, 14};
  BackendSpec sqa;
  sqa.backend = "sqa";
  sqa.schedule.trotter_slices = 8;
  sqa.left_offset = -0.0866969;
  c.schedules.push_back(sqa);
  const auto doc = c.to_json();
  const auto back = ExperimentConfig::from_json(Json::parse(doc.dump()));
  EXPECT_EQ(back.to_json(), doc);
  EXPECT_EQ(back.schedules[1].left_offset, sqa.left_offset);
  EXPECT_EQ(back.mirror_sign, MirrorSign::antiferro);
}

TEST(ExperimentConfig, ValidationRules) {
  const auto base = small_sa_config("x");
  EXPECT_NO_THROW(base.validate());

  auto too_wide = base;
  too_wide.sizes = {{2, 4}};
  EXPECT_THROW(too_wide.validate(), ValidationError);

  auto sa_offsets = base;
  sa_offsets.schedules.front().left_offset = -0.1;
  EXPECT_THROW(sa_offsets.validate(), ValidationError);

  auto sa_map = base;
  sa_map.schedules.front().schedule.offsets[0] = 0.1;
  EXPECT_THROW(sa_map.validate(), ValidationError);

  auto strong = base;
  strong.mirror_strengths = {29};
  EXPECT_THROW(strong.validate(), ValidationError);

  auto unknown = base;
  unknown.schedules.front().backend = "qpu";
  EXPECT_THROW(unknown.validate(), ValidationError);

  EXPECT_THROW(ExperimentConfig::from_json(Json{{"instances", "many"}}), ValidationError);
}

TEST(ParallelFor, CoversEveryIndexAndPropagatesErrors) {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t i) {
                              if (i == 7) throw ValidationError("boom");
                            }),
               ValidationError);
}

TEST(PsymSweep, ExactBackendOnGuardSizedProblems) {
  const auto out = scratch("exact");
  ExperimentConfig c;
  c.topology.rows = 4;
  c.topology.cols = 2;
  c.sizes = {{1, 1}};
  c.instances = 50;
  c.schedules.front().backend = "exact";
  c.out_dir = out;
  const auto result = run_psym_sweep(c);
  ASSERT_EQ(result.psym.size(), 1u);
  const auto& e = result.psym[0].estimate;
  EXPECT_EQ(e.trials, 50u);
  EXPECT_LE(0.0, e.ci_low);
  EXPECT_LE(e.ci_low, e.p_hat);
  EXPECT_LE(e.p_hat, e.ci_high);
  EXPECT_LE(e.ci_high, 1.0);
  EXPECT_TRUE(fs::exists(out / "psym.csv"));
  EXPECT_TRUE(fs::exists(out / "psym.gp"));

  // A 4x1 region doubles to 64 qubits, beyond exhaustive enumeration. The
  // error names the failing instance seed.
  c.sizes = {{4, 1}};
  try {
    run_psym_sweep(c);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& err) {
    EXPECT_NE(std::string(err.what()).find("seed"), std::string::npos);
  }
  fs::remove_all(out);
}

TEST(PsymSweep, RerunsAreByteIdenticalAcrossWorkerCounts) {
  auto a = small_sa_config(scratch("rerun_a"));
  auto b = small_sa_config(scratch("rerun_b"));
  b.workers = 4;
  const auto ra = run_psym_sweep(a);
  const auto rb = run_psym_sweep(b);
  EXPECT_EQ(read_text_file(a.out_dir / "psym.csv"), read_text_file(b.out_dir / "psym.csv"));
  EXPECT_EQ(ra.psym.size(), 3u);
  const auto rows = csv_rows(read_text_file(a.out_dir / "psym.csv"));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"rows", "cols", "M_k", "backend", "trials", "successes",
                                               "p_hat", "ci_low", "ci_high"}));
  EXPECT_EQ(rows[1][1], "1");
  EXPECT_EQ(rows[3][1], "3");
  fs::remove_all(a.out_dir);
  fs::remove_all(b.out_dir);
}

TEST(Manifest, VerifiesAndDetectsTampering) {
  auto c = small_sa_config(scratch("manifest"));
  c.save_artifacts = true;
  c.sizes = {{2, 1}};
  c.instances = 3;
  const auto result = run_psym_sweep(c);
  EXPECT_TRUE(verify_manifest(c.out_dir).empty());
  const auto doc = read_json_file(c.out_dir / "manifest.json");
  EXPECT_EQ(doc.at("tool_version"), kToolVersion);
  EXPECT_EQ(doc.at("config_digest"), sha256_hex(c.to_json().dump()));
  EXPECT_FALSE(doc.at("stages").empty());
  std::set<std::string> listed;
  for (const auto& f : doc.at("files")) listed.insert(f.at("path").get<std::string>());
  EXPECT_TRUE(listed.contains("psym.csv"));
  EXPECT_EQ(listed.size(), 2u + 2u * 3u);  // csv, gp, then problem + samples per instance

  write_text_file(c.out_dir / "psym.csv", "tampered\n");
  EXPECT_EQ(verify_manifest(c.out_dir), std::vector<std::string>{"psym.csv"});
  fs::remove(c.out_dir / "psym.gp");
  EXPECT_EQ(verify_manifest(c.out_dir).size(), 2u);
  fs::remove_all(c.out_dir);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(HammingSweep, FiveStrengthGroups) {
  auto c = small_sa_config(scratch("hamming"));
  c.sizes = {{2, 2}};
  c.instances = 30;
  c.mirror_strengths = {-28, -14, 0, 14, 28};
  c.schedules.front().schedule.sweeps = 10;
  const auto result = run_hamming_sweep(c);
  ASSERT_EQ(result.hamming.size(), 5u);
  std::set<std::string> groups;
  for (const auto& row : csv_rows(read_text_file(c.out_dir / "hamming.csv"))) {
    if (row[0] != "rows") groups.insert(row[2]);
  }
  EXPECT_EQ(groups, (std::set<std::string>{"-28", "-14", "0", "14", "28"}));
  // Saturated strengths pin the coupled column: ferro near 0, antiferro near 1.
  const auto& anti = result.hamming.front();
  const auto& ferro = result.hamming.back();
  if (anti.retained_instances > 0) EXPECT_GT(anti.profile.columns.front().mean, 0.8);
  if (ferro.retained_instances > 0) EXPECT_LT(ferro.profile.columns.front().mean, 0.2);
  EXPECT_TRUE(verify_manifest(c.out_dir).empty());
  fs::remove_all(c.out_dir);
}

TEST(HammingSweep, EmptyGroupBecomesWarningRow) {
  // The exact backend on single cells always returns a symmetric ground state
  // at M=+28, so the asymmetric-only filter keeps nothing.
  ExperimentConfig c;
  c.topology.rows = 1;
  c.topology.cols = 2;
  c.sizes = {{1, 1}};
  c.instances = 5;
  c.schedules.front().backend = "exact";
  c.out_dir = scratch("warning");
  const auto result = run_hamming_sweep(c);
  ASSERT_EQ(result.hamming.size(), 1u);
  EXPECT_EQ(result.hamming[0].retained_instances, 0);
  const auto rows = csv_rows(read_text_file(c.out_dir / "hamming.csv"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][5], "0");
  EXPECT_EQ(rows[1][6], "nan");
  fs::remove_all(c.out_dir);
}

TEST(ScheduleSweep, IdenticalSchedulesGiveIdenticalGroups) {
  auto c = small_sa_config(scratch("same"));
  c.sizes = {{2, 3}};
  c.instances = 20;
  c.mirror_strengths = {0};
  c.schedules = {c.schedules.front(), c.schedules.front()};
  const auto result = run_schedule_sweep(c);
  ASSERT_EQ(result.hamming.size(), 2u);
  EXPECT_EQ(result.hamming[0].retained_instances, result.hamming[1].retained_instances);
  ASSERT_EQ(result.hamming[0].profile.columns.size(), result.hamming[1].profile.columns.size());
  for (std::size_t i = 0; i < result.hamming[0].profile.columns.size(); ++i) {
    EXPECT_EQ(result.hamming[0].profile.columns[i].mean, result.hamming[1].profile.columns[i].mean);
  }
  fs::remove_all(c.out_dir);
}

TEST(ScheduleSweep, LeftOffsetsVersusNoneAreDistinctGroups) {
  auto c = small_sa_config(scratch("offsets"));
  c.sizes = {{2, 2}};
  c.instances = 10;
  c.reads = 4;
  c.mirror_strengths = {0};
  BackendSpec plain;
  plain.backend = "sqa";
  plain.schedule.sweeps = 20;
  plain.schedule.trotter_slices = 8;
  BackendSpec delayed = plain;
  delayed.left_offset = -0.0866969;
  c.schedules = {plain, delayed};
  const auto result = run_schedule_sweep(c);
  ASSERT_EQ(result.hamming.size(), 2u);
  EXPECT_NE(result.hamming[0].backend, result.hamming[1].backend);
  EXPECT_NE(result.hamming[1].backend.find("left_offset=-0.0866969"), std::string::npos);
  std::set<std::string> digests;
  for (const auto& row : csv_rows(read_text_file(c.out_dir / "hamming.csv"))) {
    if (row[0] != "rows") digests.insert(row[3]);
  }
  EXPECT_EQ(digests.size(), 2u);
  fs::remove_all(c.out_dir);
}

TEST(ScheduleSweep, Rejections) {
  auto c = small_sa_config(scratch("reject"));
  EXPECT_THROW(run_schedule_sweep(c), ValidationError);  // one schedule
  BackendSpec with_offsets = c.schedules.front();
  with_offsets.left_offset = -0.1;
  c.schedules.push_back(with_offsets);  // sa with offsets
  EXPECT_THROW(run_schedule_sweep(c), ValidationError);
  fs::remove_all(c.out_dir);
}

TEST(AnswerCheck, SomeAndNoneSymmetric) {
  const ProblemRegion region(build_topology(1, 2), 1, 1);
  const auto p = build_composite(generate_instance(region, false, 8), 28, MirrorSign::ferro);
  const auto exact = solve_exact(p);
  const auto some = answer_check(p, exact);
  EXPECT_TRUE(some.any_symmetric);
  EXPECT_EQ(some.verdicts.size(), exact.entries.size());

  // Flip the first left-half spin in every entry.
  SampleSet broken = exact;
  const auto model = IsingModel::from_composite(p);
  for (auto& s : broken.entries) {
    s.spins[0] = static_cast<std::int8_t>(-s.spins[0]);
    s.energy = model.energy(s.spins);
  }
  const auto none = answer_check(p, broken);
  EXPECT_FALSE(none.any_symmetric);
  EXPECT_TRUE(none.filtered.empty());

  SampleSet corrupt = exact;
  corrupt.entries[0].energy -= 4;
  EXPECT_THROW(answer_check(p, corrupt), ValidationError);
}

TEST(AnswerCheck, FileFormMatchesInProcessPath) {
  const auto dir = scratch("check");
  const ProblemRegion region(build_topology(2, 4), 2, 1);
  const auto p = build_composite(generate_instance(region, true, 3), 28, MirrorSign::antiferro);
  ScheduleConfig schedule;
  schedule.sweeps = 50;
  const auto set = solve_sa(p, schedule, 20, 4);
  write_text_file(dir / "problem.json", dump_canonical(composite_to_json(p)));
  // Samples arrive wrapped with device metadata, as an external sampler returns them.
  const Json wrapped = {{"sample_set", sample_set_to_json(set)}, {"device", {{"name", "mock"}}}};
  write_text_file(dir / "samples.json", wrapped.dump());
  const auto from_files = answer_check(dir / "problem.json", dir / "samples.json", dir / "out");
  const auto in_process = answer_check(p, set);
  EXPECT_EQ(from_files.any_symmetric, in_process.any_symmetric);
  EXPECT_EQ(from_files.filtered, in_process.filtered);
  ASSERT_EQ(from_files.verdicts.size(), in_process.verdicts.size());
  for (std::size_t i = 0; i < in_process.verdicts.size(); ++i) {
    EXPECT_EQ(from_files.verdicts[i].violating_qubits, in_process.verdicts[i].violating_qubits);
  }
  const auto report = read_json_file(dir / "out" / "check_report.json");
  EXPECT_EQ(report.at("mode"), "antiferro");
  EXPECT_EQ(sample_set_from_json(read_json_file(dir / "out" / "filtered_samples.json")), in_process.filtered);
  fs::remove_all(dir);
}

TEST(Cli, PipelineAndExitCodes) {
  const auto dir = scratch("cli");
  ExperimentConfig c;
  c.topology.rows = 1;
  c.topology.cols = 2;
  c.sizes = {{1, 1}};
  c.instances = 2;
  c.reads = 10;
  c.out_dir = dir / "run";
  write_text_file(dir / "config.json", c.to_json().dump(2));
  const std::string cfg = "--config " + (dir / "config.json").string();

  EXPECT_EQ(run_cli(cfg + " gen"), 0);
  const auto instance = dir / "run" / "instances" / "1x1" / "instance_0.json";
  ASSERT_TRUE(fs::exists(instance));
  EXPECT_EQ(run_cli("compose --instance " + instance.string() + " --strength 28 --sign 1 --out " +
                    (dir / "problem.json").string()),
            0);
  EXPECT_EQ(run_cli("--backend exact sample --problem " + (dir / "problem.json").string() + " --out " +
                    (dir / "samples.json").string()),
            0);
  EXPECT_EQ(run_cli("--out-dir " + (dir / "check").string() + " check --problem " +
                    (dir / "problem.json").string() + " --samples " + (dir / "samples.json").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "check" / "check_report.json"));

  // Break the symmetry of every entry and fix up the energies.
  const auto p = composite_from_json(read_json_file(dir / "problem.json"));
  auto set = sample_set_from_json(read_json_file(dir / "samples.json"));
  const auto model = IsingModel::from_composite(p);
  for (auto& s : set.entries) {
    s.spins[0] = static_cast<std::int8_t>(-s.spins[0]);
    s.energy = model.energy(s.spins);
  }
  write_text_file(dir / "broken.json", dump_canonical(sample_set_to_json(set)));
  EXPECT_EQ(run_cli("--out-dir " + (dir / "check2").string() + " check --problem " +
                    (dir / "problem.json").string() + " --samples " + (dir / "broken.json").string()),
            3);

  EXPECT_EQ(run_cli(cfg + " --seed 5 psym"), 0);
  EXPECT_TRUE(fs::exists(dir / "run" / "psym.csv"));
  EXPECT_EQ(run_cli(cfg + " --backend qpu psym"), 2);
  EXPECT_EQ(run_cli("compose --instance " + instance.string() + " --strength 40 --out " +
                    (dir / "x.json").string()),
            2);
  EXPECT_EQ(run_cli("check --problem /nonexistent.json --samples /nonexistent.json"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  fs::remove_all(dir);
}
