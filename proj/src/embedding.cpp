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

#include "mirrorbench/embedding.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mirrorbench/error.hpp"

namespace mirrorbench {

namespace {

void require_complete(const CompositeProblem& problem, const SpinConfig& config) {
  if (config.size() != problem.topology().num_qubits()) {
    throw ValidationError("spin configuration sized for " + std::to_string(config.size()) +
                          " qubits, topology has " + std::to_string(problem.topology().num_qubits()));
  }
  for (QubitId q : problem.qubits()) {
    if (!config.assigned(q)) {
      throw ValidationError("spin configuration misses functional qubit " + std::to_string(q));
    }
  }
}

}  // namespace

CompositeProblem::CompositeProblem(IsingInstance instance, std::vector<CouplingTerm> couplings,
                                   std::vector<FieldTerm> fields,
                                   std::vector<MirrorPair> mirror_pairs, MirrorSign sign,
                                   std::int32_t mirror_strength)
    : instance_(std::move(instance)),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)),
      mirror_pairs_(std::move(mirror_pairs)),
      sign_(sign),
      strength_(mirror_strength) {
  auto by_coupler = [](const CouplingTerm& x, const CouplingTerm& y) { return x.coupler < y.coupler; };
  auto by_qubit = [](const FieldTerm& x, const FieldTerm& y) { return x.qubit < y.qubit; };
  auto by_left = [](const MirrorPair& x, const MirrorPair& y) { return x.left < y.left; };
  std::sort(couplings_.begin(), couplings_.end(), by_coupler);
  std::sort(fields_.begin(), fields_.end(), by_qubit);
  std::sort(mirror_pairs_.begin(), mirror_pairs_.end(), by_left);
  qubits_.reserve(fields_.size());
  for (const FieldTerm& f : fields_) qubits_.push_back(f.qubit);
}

CompositeProblem build_composite(const IsingInstance& instance, std::int32_t mirror_strength,
                                 MirrorSign sign) {
  instance.validate();
  const ProblemRegion& region = instance.region;
  const ChimeraTopology& topology = region.topology();
  const MirrorPlane& plane = region.plane();
  if (std::abs(mirror_strength) > kScale) {
    throw ValidationError("mirror strength " + std::to_string(mirror_strength) +
                          " exceeds the maximum magnitude " + std::to_string(kScale));
  }
  if (region.cols() > plane.split_col) {
    throw ValidationError("instance is wider than the half-grid");
  }
  const std::int32_t magnitude = std::abs(mirror_strength);

  std::vector<CouplingTerm> couplings = instance.couplings;
  for (const CouplingTerm& t : instance.couplings) {
    couplings.push_back({mirror_map(topology, plane, t.coupler), t.value});
  }
  std::vector<FieldTerm> fields = instance.fields;
  for (const FieldTerm& f : instance.fields) {
    fields.push_back({mirror_map(topology, plane, f.qubit), sign_value(sign) * f.value});
  }

  std::vector<MirrorPair> pairs;
  const int adjacent_col = plane.split_col - 1;
  for (int row = 0; row < region.rows(); ++row) {
    for (int k = 4; k < kQubitsPerCell; ++k) {
      const QubitId left = topology.qubit(row, adjacent_col, k);
      const QubitId right = topology.qubit(row, plane.split_col, k);
      if (topology.coupler_alive(Coupler::between(left, right))) {
        pairs.push_back({left, right, sign_value(sign) * magnitude});
      }
    }
  }
  if (pairs.empty()) {
    throw ValidationError("no functional coupler crosses the mirror plane next to the problem "
                          "region; the mirror constraint cannot be imposed");
  }
  return CompositeProblem(instance, std::move(couplings), std::move(fields), std::move(pairs), sign,
                          magnitude);
}

Energy composite_energy(const CompositeProblem& problem, const SpinConfig& config) {
  require_complete(problem, config);
  Energy e = 0;
  for (const CouplingTerm& t : problem.couplings()) {
    e -= static_cast<Energy>(t.value) * config[t.coupler.a] * config[t.coupler.b];
  }
  for (const FieldTerm& f : problem.fields()) e -= static_cast<Energy>(f.value) * config[f.qubit];
  for (const MirrorPair& p : problem.mirror_pairs()) {
    e -= static_cast<Energy>(p.strength) * config[p.left] * config[p.right];
  }
  return e;
}

SpinConfig symmetric_extension(const CompositeProblem& problem, const SpinConfig& sigma) {
  SpinConfig out(problem.topology().num_qubits());
  for (QubitId q : problem.region().qubits()) {
    if (!sigma.assigned(q)) {
      throw ValidationError("configuration on G misses functional qubit " + std::to_string(q));
    }
    out.set(q, sigma[q]);
    out.set(problem.mirror_of(q), sign_value(problem.mirror_sign()) * sigma[q]);
  }
  return out;
}

SpinConfig exchange_halves(const CompositeProblem& problem, const SpinConfig& config) {
  require_complete(problem, config);
  const int s = sign_value(problem.mirror_sign());
  SpinConfig out(problem.topology().num_qubits());
  for (QubitId q : problem.qubits()) out.set(q, s * config[problem.mirror_of(q)]);
  return out;
}

}  // namespace mirrorbench
