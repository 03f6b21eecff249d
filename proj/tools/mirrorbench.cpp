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

// mirrorbench command line: gen, compose, sample, psym, hamming, sweep, check.
//
// Exit status: 0 success, 2 validation error, 3 "none symmetric" from check.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mirrorbench/error.hpp"
#include "mirrorbench/harness.hpp"
#include "mirrorbench/io.hpp"
#include "mirrorbench/rng.hpp"

namespace mb = mirrorbench;
namespace fs = std::filesystem;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNoneSymmetric = 3;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> backend;
  std::optional<int> workers;
};

mb::ExperimentConfig load_config(const GlobalOptions& g) {
  mb::ExperimentConfig config;
  if (!g.config_path.empty()) {
    // Defer validation until the command-line overrides are applied.
    mb::Json doc = mb::read_json_file(g.config_path);
    config = mb::ExperimentConfig::from_json(doc);
  }
  if (g.seed) config.base_seed = *g.seed;
  if (g.out_dir) config.out_dir = *g.out_dir;
  if (g.workers) config.workers = *g.workers;
  if (g.backend) {
    for (auto& s : config.schedules) s.backend = *g.backend;
  }
  config.validate();
  return config;
}

void print_psym(const std::vector<mb::PsymRow>& rows) {
  for (const auto& r : rows) {
    std::cout << r.size.rows << "x" << r.size.cols << " M_k=" << r.mirror_value << " " << r.backend
              << ": P_sym=" << r.estimate.p_hat << " [" << r.estimate.ci_low << ", " << r.estimate.ci_high
              << "] (" << r.estimate.successes << "/" << r.estimate.trials << ")\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mirrorbench: mirror-symmetry benchmarks for Ising samplers"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config_path, "experiment config (JSON)");
  app.add_option("--seed", g.seed, "override base_seed");
  app.add_option("--out-dir", g.out_dir, "override output directory");
  app.add_option("--backend", g.backend, "override backend of every schedule (exact, sa, sqa)");
  app.add_option("--workers", g.workers, "worker threads");

  auto* gen = app.add_subcommand("gen", "generate instance batches for every configured size");

  auto* compose = app.add_subcommand("compose", "build a mirror composite from an instance file");
  std::string instance_file, compose_out;
  int strength = mb::kScale, sign = 1;
  compose->add_option("--instance", instance_file, "instance JSON")->required();
  compose->add_option("--strength", strength, "|M_k| in units of 1/28 (0..28)");
  compose->add_option("--sign", sign, "+1 ferromagnetic, -1 antiferromagnetic");
  compose->add_option("--out", compose_out, "composite JSON output")->required();

  auto* sample = app.add_subcommand("sample", "sample a composite problem file");
  std::string problem_file, sample_out;
  std::uint64_t reads = 100;
  std::optional<int> sweeps;
  sample->add_option("--problem", problem_file, "composite JSON")->required();
  sample->add_option("--reads", reads, "number of reads");
  sample->add_option("--sweeps", sweeps, "override sweeps of the first schedule");
  sample->add_option("--out", sample_out, "sample set JSON output")->required();

  auto* psym = app.add_subcommand("psym", "P_sym size sweep");
  auto* hamming = app.add_subcommand("hamming", "column Hamming profile over mirror strengths");
  auto* sweep = app.add_subcommand("sweep", "column Hamming profile over schedules");

  auto* check = app.add_subcommand("check", "symmetry answer check of a sample set");
  std::string check_problem, check_samples;
  check->add_option("--problem", check_problem, "composite JSON")->required();
  check->add_option("--samples", check_samples, "sample set JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (gen->parsed()) {
      const mb::ExperimentConfig config = load_config(g);
      const mb::ChimeraTopology topology = config.topology.build();
      for (std::size_t i = 0; i < config.sizes.size(); ++i) {
        const auto& size = config.sizes[i];
        const mb::ProblemRegion region(topology, size.rows, size.cols);
        const auto batch = mb::generate_batch(region, config.instances, config.fields,
                                              mb::derive_seed(config.base_seed, i));
        const fs::path dir = config.out_dir / "instances" /
                             (std::to_string(size.rows) + "x" + std::to_string(size.cols));
        for (std::size_t k = 0; k < batch.instances.size(); ++k) {
          mb::write_text_file(dir / ("instance_" + std::to_string(k) + ".json"),
                              mb::dump_canonical(mb::instance_to_json(batch.instances[k])));
        }
        std::cout << "wrote " << batch.instances.size() << " instances to " << dir.string() << "\n";
      }
    } else if (compose->parsed()) {
      if (sign != 1 && sign != -1) throw mb::ValidationError("--sign must be +1 or -1");
      const auto instance = mb::instance_from_json(mb::read_json_file(instance_file));
      const auto problem = mb::build_composite(instance, strength, static_cast<mb::MirrorSign>(sign));
      mb::write_text_file(compose_out, mb::dump_canonical(mb::composite_to_json(problem)));
      std::cout << "wrote composite with " << problem.qubits().size() << " qubits and "
                << problem.mirror_pairs().size() << " mirror pairs to " << compose_out << "\n";
    } else if (sample->parsed()) {
      mb::ExperimentConfig config;
      if (!g.config_path.empty()) config = load_config(g);
      mb::BackendSpec backend = config.schedules.front();
      if (g.backend) backend.backend = *g.backend;
      if (sweeps) backend.schedule.sweeps = *sweeps;
      const std::uint64_t seed = g.seed.value_or(config.base_seed);
      const auto problem = mb::composite_from_json(mb::read_json_file(problem_file));
      const auto set = mb::ingest(problem, mb::run_backend(backend, problem, reads, seed));
      mb::write_text_file(sample_out, mb::dump_canonical(mb::sample_set_to_json(set)));
      std::cout << "wrote " << set.entries.size() << " distinct samples (lowest energy "
                << set.entries.front().energy << "/" << mb::kScale << ") to " << sample_out << "\n";
    } else if (psym->parsed()) {
      const auto out = mb::run_psym_sweep(load_config(g));
      print_psym(out.psym);
    } else if (hamming->parsed()) {
      const auto config = load_config(g);
      mb::run_hamming_sweep(config);
      std::cout << "wrote " << (config.out_dir / "hamming.csv").string() << "\n";
    } else if (sweep->parsed()) {
      const auto config = load_config(g);
      mb::run_schedule_sweep(config);
      std::cout << "wrote " << (config.out_dir / "hamming.csv").string() << "\n";
    } else if (check->parsed()) {
      const fs::path out_dir = g.out_dir.value_or(".");
      const auto report = mb::answer_check(check_problem, check_samples, out_dir);
      std::cout << (report.any_symmetric ? "some symmetric" : "none symmetric") << ": "
                << report.filtered.entries.size() << " of " << report.verdicts.size()
                << " distinct samples kept\n";
      return report.any_symmetric ? 0 : kExitNoneSymmetric;
    }
  } catch (const mb::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
