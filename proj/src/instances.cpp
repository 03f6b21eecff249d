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

#include "mirrorbench/instances.hpp"

#include <algorithm>
#include <string>

#include "mirrorbench/error.hpp"
#include "mirrorbench/rng.hpp"

namespace mirrorbench {

bool is_sidon_value(std::int32_t v) noexcept {
  return std::find(kSidonValues.begin(), kSidonValues.end(), v) != kSidonValues.end();
}

void IsingInstance::validate() const {
  const auto& cs = region.couplers();
  if (couplings.size() != cs.size()) {
    throw ValidationError("instance has " + std::to_string(couplings.size()) +
                          " couplings but its region has " + std::to_string(cs.size()) +
                          " functional couplers");
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (couplings[i].coupler != cs[i]) {
      throw ValidationError("coupling [" + std::to_string(couplings[i].coupler.a) + "," +
                            std::to_string(couplings[i].coupler.b) +
                            "] is not the expected functional coupler of the region");
    }
    if (!is_sidon_value(couplings[i].value)) {
      throw ValidationError("coupling value " + std::to_string(couplings[i].value) +
                            " is not in the Sidon set");
    }
  }
  const auto& qs = region.qubits();
  if (fields.size() != qs.size()) {
    throw ValidationError("instance has " + std::to_string(fields.size()) +
                          " fields but its region has " + std::to_string(qs.size()) +
                          " functional qubits");
  }
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (fields[i].qubit != qs[i]) {
      throw ValidationError("field on qubit " + std::to_string(fields[i].qubit) +
                            " is not the expected functional qubit of the region");
    }
    if (fields[i].value != 0 && !is_sidon_value(fields[i].value)) {
      throw ValidationError("field value " + std::to_string(fields[i].value) +
                            " is neither 0 nor in the Sidon set");
    }
  }
}

IsingInstance generate_instance(const ProblemRegion& region, bool with_fields, std::uint64_t seed) {
  if (region.qubits().empty()) {
    throw ValidationError("problem region " + std::to_string(region.rows()) + "x" +
                          std::to_string(region.cols()) + " has no functional qubits");
  }
  SplitMix64 rng(seed);
  IsingInstance out{region, {}, {}, seed};
  out.couplings.reserve(region.couplers().size());
  for (const Coupler& c : region.couplers()) {
    out.couplings.push_back({c, kSidonValues[rng.below(kSidonValues.size())]});
  }
  out.fields.reserve(region.qubits().size());
  for (QubitId q : region.qubits()) {
    out.fields.push_back({q, with_fields ? kSidonValues[rng.below(kSidonValues.size())] : 0});
  }
  return out;
}

Energy energy(const IsingInstance& instance, const SpinConfig& config) {
  if (config.size() != instance.region.topology().num_qubits()) {
    throw ValidationError("spin configuration sized for " + std::to_string(config.size()) +
                          " qubits, topology has " +
                          std::to_string(instance.region.topology().num_qubits()));
  }
  for (const FieldTerm& f : instance.fields) {
    if (!config.assigned(f.qubit)) {
      throw ValidationError("spin configuration misses functional qubit " +
                            std::to_string(f.qubit));
    }
  }
  Energy e = 0;
  for (const CouplingTerm& t : instance.couplings) {
    e -= static_cast<Energy>(t.value) * config[t.coupler.a] * config[t.coupler.b];
  }
  for (const FieldTerm& f : instance.fields) {
    e -= static_cast<Energy>(f.value) * config[f.qubit];
  }
  return e;
}

InstanceBatch generate_batch(const ProblemRegion& region, int count, bool with_fields,
                             std::uint64_t base_seed) {
  if (count < 1) throw ValidationError("instance count must be at least 1");
  InstanceBatch batch{{}, with_fields, base_seed};
  batch.instances.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    batch.instances.push_back(
        generate_instance(region, with_fields, derive_seed(base_seed, static_cast<std::uint64_t>(k))));
  }
  return batch;
}

}  // namespace mirrorbench
