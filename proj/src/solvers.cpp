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

#include "mirrorbench/solvers.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "mirrorbench/error.hpp"
#include "mirrorbench/rng.hpp"

namespace mirrorbench {

namespace {

// Metropolis moves with beta * dE above this are skipped: their acceptance
// probability is below the 2^-64 resolution of the generator.
constexpr double kSkipThreshold = 44.36142;

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
  return out;
}

std::string offsets_digest(const std::map<QubitId, double>& offsets) {
  if (offsets.empty()) return "none";
  std::string text;
  for (const auto& [q, o] : offsets) text += std::to_string(q) + ":" + format_double(o) + ";";
  return std::to_string(offsets.size()) + "@" + hex64(fnv1a(text));
}

std::vector<std::int32_t> local_fields(const IsingModel& model, std::span<const std::int8_t> spins) {
  std::vector<std::int32_t> lf(model.fields);
  for (int v = 0; v < model.size(); ++v) {
    for (std::int32_t e = model.offsets[v]; e < model.offsets[v + 1]; ++e) {
      lf[static_cast<std::size_t>(v)] += model.weights[e] * spins[static_cast<std::size_t>(model.neighbors[e])];
    }
  }
  return lf;
}

SampleSet finish(const IsingModel& model, std::vector<Sample> raw, std::uint64_t reads,
                 std::string backend, std::string digest, std::uint64_t seed) {
  SampleSet set{model.variables, std::move(raw), reads, std::move(backend), std::move(digest), seed};
  canonicalize(set);
  return set;
}

}  // namespace

Energy IsingModel::energy(std::span<const std::int8_t> spins) const {
  if (static_cast<int>(spins.size()) != size()) {
    throw ValidationError("spin vector has " + std::to_string(spins.size()) + " entries, model has " +
                          std::to_string(size()) + " variables");
  }
  Energy e = 0;
  for (int v = 0; v < size(); ++v) {
    const std::int8_t s = spins[static_cast<std::size_t>(v)];
    if (s != 1 && s != -1) throw ValidationError("spin values must be +1 or -1");
    e -= static_cast<Energy>(fields[static_cast<std::size_t>(v)]) * s;
    for (std::int32_t k = offsets[v]; k < offsets[v + 1]; ++k) {
      const std::int32_t u = neighbors[k];
      if (u > v) e -= static_cast<Energy>(weights[k]) * s * spins[static_cast<std::size_t>(u)];
    }
  }
  return e;
}

IsingModel IsingModel::from_composite(const CompositeProblem& problem) {
  IsingModel model;
  model.variables = problem.qubits();
  const int n = model.size();
  auto index_of = [&](QubitId q) {
    auto it = std::lower_bound(model.variables.begin(), model.variables.end(), q);
    if (it == model.variables.end() || *it != q) {
      throw ValidationError("coupler endpoint " + std::to_string(q) + " is not a problem qubit");
    }
    return static_cast<std::int32_t>(it - model.variables.begin());
  };
  model.fields.reserve(static_cast<std::size_t>(n));
  for (const FieldTerm& f : problem.fields()) model.fields.push_back(f.value);

  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> adj(static_cast<std::size_t>(n));
  auto add = [&](QubitId a, QubitId b, std::int32_t w) {
    const std::int32_t i = index_of(a), j = index_of(b);
    adj[static_cast<std::size_t>(i)].emplace_back(j, w);
    adj[static_cast<std::size_t>(j)].emplace_back(i, w);
  };
  for (const CouplingTerm& t : problem.couplings()) add(t.coupler.a, t.coupler.b, t.value);
  for (const MirrorPair& p : problem.mirror_pairs()) add(p.left, p.right, p.strength);

  model.offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) {
    auto& row = adj[static_cast<std::size_t>(v)];
    std::sort(row.begin(), row.end());
    model.offsets[static_cast<std::size_t>(v) + 1] =
        model.offsets[static_cast<std::size_t>(v)] + static_cast<std::int32_t>(row.size());
    for (const auto& [u, w] : row) {
      model.neighbors.push_back(u);
      model.weights.push_back(w);
    }
  }
  return model;
}

bool canonical_less(const Sample& x, const Sample& y) noexcept {
  if (x.energy != y.energy) return x.energy < y.energy;
  // +1 sorts before -1.
  return std::lexicographical_compare(x.spins.begin(), x.spins.end(), y.spins.begin(), y.spins.end(),
                                      [](std::int8_t a, std::int8_t b) { return a > b; });
}

void canonicalize(SampleSet& set) {
  auto& entries = set.entries;
  std::sort(entries.begin(), entries.end(), canonical_less);
  std::vector<Sample> merged;
  merged.reserve(entries.size());
  for (Sample& s : entries) {
    if (!merged.empty() && merged.back().spins == s.spins) {
      merged.back().occurrences += s.occurrences;
    } else {
      merged.push_back(std::move(s));
    }
  }
  entries = std::move(merged);
}

std::string to_bitstring(std::span<const std::int8_t> spins) {
  std::string out(spins.size(), '0');
  for (std::size_t i = 0; i < spins.size(); ++i) out[i] = spins[i] < 0 ? '1' : '0';
  return out;
}

std::vector<std::int8_t> from_bitstring(const std::string& bits) {
  std::vector<std::int8_t> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '0') {
      out[i] = 1;
    } else if (bits[i] == '1') {
      out[i] = -1;
    } else {
      throw ValidationError("spin bit string may only contain '0' and '1'");
    }
  }
  return out;
}

SpinConfig to_config(const CompositeProblem& problem, const SampleSet& set, const Sample& sample) {
  if (sample.spins.size() != set.variables.size()) {
    throw ValidationError("sample has " + std::to_string(sample.spins.size()) +
                          " spins for " + std::to_string(set.variables.size()) + " variables");
  }
  SpinConfig config(problem.topology().num_qubits());
  for (std::size_t i = 0; i < set.variables.size(); ++i) {
    if (!problem.topology().contains(set.variables[i])) {
      throw ValidationError("sample variable " + std::to_string(set.variables[i]) +
                            " is outside the topology");
    }
    config.set(set.variables[i], sample.spins[i]);
  }
  return config;
}

SampleSet ingest(const CompositeProblem& problem, SampleSet set) {
  if (set.variables != problem.qubits()) {
    throw ValidationError("sample set variables do not match the problem's functional qubits");
  }
  std::uint64_t total = 0;
  for (const Sample& s : set.entries) {
    const Energy expected = composite_energy(problem, to_config(problem, set, s));
    if (expected != s.energy) {
      throw ValidationError("sample " + to_bitstring(s.spins) + " reports energy " +
                            std::to_string(s.energy) + " but recomputes to " + std::to_string(expected));
    }
    if (s.occurrences == 0) throw ValidationError("sample with zero occurrences");
    total += s.occurrences;
  }
  if (total != set.reads) {
    throw ValidationError("occurrences sum to " + std::to_string(total) + " but reads is " +
                          std::to_string(set.reads));
  }
  canonicalize(set);
  return set;
}

void ScheduleConfig::validate() const {
  if (sweeps < 1) throw ValidationError("schedule needs at least one sweep");
  if (!(beta_start > 0.0) || !(beta_end >= beta_start) || !std::isfinite(beta_end)) {
    throw ValidationError("schedule needs 0 < beta_start <= beta_end");
  }
  for (const auto& [q, o] : offsets) {
    if (!(o >= -1.0 && o <= 1.0)) {
      throw ValidationError("offset for qubit " + std::to_string(q) + " lies outside [-1, 1]");
    }
  }
  if (trotter_slices < 2) throw ValidationError("simulated quantum annealing needs >= 2 trotter slices");
  if (!(transverse_field_start > 0.0) || !(transverse_field_end > 0.0) ||
      !std::isfinite(transverse_field_start)) {
    throw ValidationError("transverse field endpoints must be positive");
  }
}

std::string sa_digest(const ScheduleConfig& schedule) {
  return "sa(sweeps=" + std::to_string(schedule.sweeps) + ",beta=" +
         format_double(schedule.beta_start) + ".." + format_double(schedule.beta_end) + ")";
}

std::string sqa_digest(const ScheduleConfig& schedule) {
  return "sqa(sweeps=" + std::to_string(schedule.sweeps) + ",beta=" + format_double(schedule.beta_end) +
         ",slices=" + std::to_string(schedule.trotter_slices) + ",gamma=" +
         format_double(schedule.transverse_field_start) + ".." +
         format_double(schedule.transverse_field_end) + ",offsets=" +
         offsets_digest(schedule.offsets) + ")";
}

SampleSet solve_exact(const IsingModel& model) {
  const int n = model.size();
  if (n > kMaxExactQubits) {
    throw ValidationError("exhaustive enumeration is limited to " + std::to_string(kMaxExactQubits) +
                          " qubits, problem has " + std::to_string(n) +
                          "; use the sa or sqa backend");
  }
  std::vector<std::int8_t> spins(static_cast<std::size_t>(n), 1);
  std::vector<std::int32_t> lf = local_fields(model, spins);
  Energy current = model.energy(spins);
  Energy best = current;
  // Minima are stored as Gray codes: bit v set means variable v is -1.
  std::vector<std::uint32_t> minima{0};

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = std::countr_zero(i);
    const auto vi = static_cast<std::size_t>(v);
    current += 2 * static_cast<Energy>(spins[vi]) * lf[vi];
    spins[vi] = static_cast<std::int8_t>(-spins[vi]);
    for (std::int32_t e = model.offsets[vi]; e < model.offsets[vi + 1]; ++e) {
      lf[static_cast<std::size_t>(model.neighbors[e])] += 2 * model.weights[e] * spins[vi];
    }
    if (current < best) {
      best = current;
      minima.clear();
    }
    if (current == best) minima.push_back(static_cast<std::uint32_t>(i ^ (i >> 1)));
  }

  std::vector<Sample> raw;
  raw.reserve(minima.size());
  for (std::uint32_t code : minima) {
    Sample s{std::vector<std::int8_t>(static_cast<std::size_t>(n)), best, 1};
    for (int v = 0; v < n; ++v) s.spins[static_cast<std::size_t>(v)] = ((code >> v) & 1U) ? -1 : 1;
    raw.push_back(std::move(s));
  }
  const auto reads = static_cast<std::uint64_t>(raw.size());
  return finish(model, std::move(raw), reads, "exact", "exact(gray)", 0);
}

SampleSet solve_exact(const CompositeProblem& problem) {
  return solve_exact(IsingModel::from_composite(problem));
}

SampleSet solve_sa(const IsingModel& model, const ScheduleConfig& schedule, std::uint64_t reads,
                   std::uint64_t seed) {
  schedule.validate();
  if (!schedule.offsets.empty()) {
    throw ValidationError("annealing offsets are only meaningful for the sqa backend; "
                          "the sa backend rejects them");
  }
  if (reads < 1) throw ValidationError("reads must be at least 1");

  const int n = model.size();
  std::vector<double> betas(static_cast<std::size_t>(schedule.sweeps), schedule.beta_end);
  if (schedule.sweeps > 1) {
    const double ratio = schedule.beta_end / schedule.beta_start;
    for (int t = 0; t < schedule.sweeps; ++t) {
      betas[static_cast<std::size_t>(t)] =
          schedule.beta_start * std::pow(ratio, static_cast<double>(t) / (schedule.sweeps - 1));
    }
  }

  std::vector<Sample> raw;
  raw.reserve(static_cast<std::size_t>(reads));
  std::vector<std::int8_t> spins(static_cast<std::size_t>(n));
  for (std::uint64_t r = 0; r < reads; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    for (auto& s : spins) s = rng.spin();
    std::vector<std::int32_t> lf = local_fields(model, spins);
    for (double beta : betas) {
      const double threshold = kSkipThreshold / beta;
      for (int v = 0; v < n; ++v) {
        const auto vi = static_cast<std::size_t>(v);
        const std::int32_t delta = 2 * spins[vi] * lf[vi];
        if (delta >= threshold) continue;
        if (delta > 0 && std::exp(-beta * delta) <= rng.uniform()) continue;
        spins[vi] = static_cast<std::int8_t>(-spins[vi]);
        const std::int32_t step = 2 * spins[vi];
        for (std::int32_t e = model.offsets[vi]; e < model.offsets[vi + 1]; ++e) {
          lf[static_cast<std::size_t>(model.neighbors[e])] += step * model.weights[e];
        }
      }
    }
    raw.push_back({spins, model.energy(spins), 1});
  }
  return finish(model, std::move(raw), reads, "sa", sa_digest(schedule), seed);
}

SampleSet solve_sa(const CompositeProblem& problem, const ScheduleConfig& schedule,
                   std::uint64_t reads, std::uint64_t seed) {
  return solve_sa(IsingModel::from_composite(problem), schedule, reads, seed);
}

SampleSet solve_sqa(const IsingModel& model, const ScheduleConfig& schedule, std::uint64_t reads,
                    std::uint64_t seed) {
  schedule.validate();
  if (reads < 1) throw ValidationError("reads must be at least 1");

  const int n = model.size();
  const int slices = schedule.trotter_slices;
  const double beta = schedule.beta_end;
  const double slice_beta = beta / slices;

  std::vector<double> offset(static_cast<std::size_t>(n), 0.0);
  for (const auto& [q, o] : schedule.offsets) {
    auto it = std::lower_bound(model.variables.begin(), model.variables.end(), q);
    if (it == model.variables.end() || *it != q) {
      throw ValidationError("offset given for qubit " + std::to_string(q) +
                            " which is not a problem qubit");
    }
    offset[static_cast<std::size_t>(it - model.variables.begin())] = o;
  }

  // Inter-slice coupling per qubit and sweep: K = -1/2 ln tanh(beta * Gamma / P).
  const double g0 = schedule.transverse_field_start;
  const double g1 = schedule.transverse_field_end;
  std::vector<double> coupling(static_cast<std::size_t>(schedule.sweeps) * static_cast<std::size_t>(n));
  for (int t = 0; t < schedule.sweeps; ++t) {
    const double s = schedule.sweeps == 1 ? 1.0 : static_cast<double>(t) / (schedule.sweeps - 1);
    for (int v = 0; v < n; ++v) {
      const double progress = std::clamp(s + offset[static_cast<std::size_t>(v)], 0.0, 1.0);
      const double gamma = g0 + (g1 - g0) * progress;
      coupling[static_cast<std::size_t>(t) * n + static_cast<std::size_t>(v)] =
          -0.5 * std::log(std::tanh(slice_beta * gamma));
    }
  }

  const auto stride = static_cast<std::size_t>(n);
  std::vector<Sample> raw;
  raw.reserve(static_cast<std::size_t>(reads));
  std::vector<std::int8_t> world(stride * static_cast<std::size_t>(slices));
  std::vector<std::int32_t> lf(world.size());
  for (std::uint64_t r = 0; r < reads; ++r) {
    SplitMix64 rng(derive_seed(seed, r));
    for (auto& s : world) s = rng.spin();
    for (int p = 0; p < slices; ++p) {
      const std::span<const std::int8_t> slice(world.data() + p * stride, stride);
      const auto f = local_fields(model, slice);
      std::copy(f.begin(), f.end(), lf.begin() + static_cast<std::ptrdiff_t>(p * stride));
    }
    auto flip = [&](int p, int v) {
      const std::size_t at = p * stride + static_cast<std::size_t>(v);
      world[at] = static_cast<std::int8_t>(-world[at]);
      const std::int32_t step = 2 * world[at];
      for (std::int32_t e = model.offsets[v]; e < model.offsets[v + 1]; ++e) {
        lf[p * stride + static_cast<std::size_t>(model.neighbors[e])] += step * model.weights[e];
      }
    };

    for (int t = 0; t < schedule.sweeps; ++t) {
      const double* k = coupling.data() + static_cast<std::size_t>(t) * stride;
      for (int p = 0; p < slices; ++p) {
        const int prev = (p + slices - 1) % slices, next = (p + 1) % slices;
        for (int v = 0; v < n; ++v) {
          const std::size_t at = p * stride + static_cast<std::size_t>(v);
          const int s = world[at];
          const int around = world[prev * stride + static_cast<std::size_t>(v)] +
                             world[next * stride + static_cast<std::size_t>(v)];
          const double action = slice_beta * (2 * s * lf[at]) + 2.0 * k[v] * s * around;
          if (action >= kSkipThreshold) continue;
          if (action > 0 && std::exp(-action) <= rng.uniform()) continue;
          flip(p, v);
        }
      }
      // World-line moves: flip a qubit in every slice at once.
      for (int v = 0; v < n; ++v) {
        std::int64_t delta = 0;
        for (int p = 0; p < slices; ++p) {
          const std::size_t at = p * stride + static_cast<std::size_t>(v);
          delta += 2 * world[at] * lf[at];
        }
        const double action = slice_beta * static_cast<double>(delta);
        if (action >= kSkipThreshold) continue;
        if (action > 0 && std::exp(-action) <= rng.uniform()) continue;
        for (int p = 0; p < slices; ++p) flip(p, v);
      }
    }
    std::vector<std::int8_t> spins(world.begin(), world.begin() + static_cast<std::ptrdiff_t>(stride));
    const Energy e = model.energy(spins);
    raw.push_back({std::move(spins), e, 1});
  }
  return finish(model, std::move(raw), reads, "sqa", sqa_digest(schedule), seed);
}

SampleSet solve_sqa(const CompositeProblem& problem, const ScheduleConfig& schedule,
                    std::uint64_t reads, std::uint64_t seed) {
  return solve_sqa(IsingModel::from_composite(problem), schedule, reads, seed);
}

std::vector<Sample> lowest_energy_entries(const SampleSet& set) {
  if (set.entries.empty()) throw ValidationError("lowest_energy_entries of an empty sample set");
  const Energy best = std::min_element(set.entries.begin(), set.entries.end(),
                                       [](const Sample& a, const Sample& b) { return a.energy < b.energy; })
                          ->energy;
  std::vector<Sample> out;
  for (const Sample& s : set.entries) {
    if (s.energy == best) out.push_back(s);
  }
  return out;
}

}  // namespace mirrorbench
