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

#include <cmath>
#include <map>
#include <set>

#include "gtest/gtest.h"
#include "mirrorbench/error.hpp"
#include "mirrorbench/rng.hpp"
#include "oracle.hpp"

using namespace mirrorbench;

namespace {

// Frozen from oracle::direct_energy; see FrozenSeededSingleCellValue.
constexpr std::int64_t kFrozenAllUpEnergy2024 = 9;

SpinConfig random_config(const IsingInstance& inst, std::uint64_t seed) {
  SplitMix64 rng(seed);
  SpinConfig c(inst.region.topology().num_qubits());
  for (QubitId q : inst.region.qubits()) c.set(q, rng.spin());
  return c;
}

std::map<QubitId, int> as_map(const IsingInstance& inst, const SpinConfig& c) {
  std::map<QubitId, int> out;
  for (QubitId q : inst.region.qubits()) out[q] = c[q];
  return out;
}

}  // namespace

TEST(GenerateInstance, CouplingsAreSignedSidonValues) {
  const ProblemRegion region(build_topology(4, 8), 4, 4);
  const auto inst = generate_instance(region, true, 11);
  const std::set<double> allowed = {-1.0, -19.0 / 28, -13.0 / 28, -8.0 / 28, 8.0 / 28, 13.0 / 28, 19.0 / 28, 1.0};
  for (const auto& t : inst.couplings) {
    EXPECT_TRUE(allowed.contains(static_cast<double>(t.value) / kScale)) << t.value;
  }
  for (const auto& f : inst.fields) EXPECT_TRUE(is_sidon_value(f.value)) << f.value;
  EXPECT_NO_THROW(inst.validate());
}

TEST(GenerateInstance, FieldsOffMeansExactlyZero) {
  const ProblemRegion region(build_topology(4, 8), 4, 2);
  const auto inst = generate_instance(region, false, 5);
  ASSERT_EQ(inst.fields.size(), region.qubits().size());
  for (const auto& f : inst.fields) EXPECT_EQ(f.value, 0);
}

TEST(GenerateInstance, DeterministicInSeed) {
  const ProblemRegion region(build_topology(2, 4, {3, 17}), 2, 2);
  EXPECT_EQ(generate_instance(region, true, 99), generate_instance(region, true, 99));
  EXPECT_NE(generate_instance(region, true, 99), generate_instance(region, true, 100));
}

TEST(GenerateInstance, CoversExactlyTheFunctionalSets) {
  const auto t = build_topology(2, 4, {9, 12});
  const ProblemRegion region(t, 2, 2);
  const auto inst = generate_instance(region, false, 1);
  ASSERT_EQ(inst.couplings.size(), region.couplers().size());
  for (std::size_t i = 0; i < inst.couplings.size(); ++i) {
    EXPECT_EQ(inst.couplings[i].coupler, region.couplers()[i]);
    EXPECT_TRUE(region.topology().coupler_alive(inst.couplings[i].coupler));
  }
}

TEST(GenerateInstance, EmptyRegionIsAnError) {
  const auto t = build_topology(1, 2, {0, 1, 2, 3, 4, 5, 6, 7});
  const ProblemRegion region(t, 1, 1);
  EXPECT_THROW(generate_instance(region, false, 1), ValidationError);
}

TEST(GenerateInstance, CouplingHistogramIsUniform) {
  // 16x8 region of a 16x16 grid: 16*8*16 + 8*4*15 + 16*4*7 = 2976 couplers.
  const ProblemRegion region(build_topology(16, 16), 16, 8);
  std::map<std::int32_t, std::int64_t> counts;
  std::int64_t draws = 0;
  for (std::uint64_t seed = 0; draws < 100000; ++seed) {
    for (const auto& t : generate_instance(region, false, seed).couplings) {
      ++counts[t.value];
      ++draws;
    }
  }
  ASSERT_EQ(counts.size(), 8u);
  const double p = 1.0 / 8, expected = draws * p, sigma = std::sqrt(draws * p * (1 - p));
  for (const auto& [value, c] : counts) {
    EXPECT_LT(std::abs(c - expected), 3 * sigma) << value;
  }
}

TEST(Energy, SingleFerroCoupler) {
  // Region with only qubits 4 and 0 alive inside cell (0,0) of a 1x2 grid.
  const auto t = build_topology(1, 2, {1, 2, 3, 5, 6, 7});
  const ProblemRegion region(t, 1, 1);
  ASSERT_EQ(region.couplers().size(), 1u);
  IsingInstance inst{region, {{region.couplers()[0], 28}}, {{0, 0}, {4, 0}}, 0};
  inst.validate();
  SpinConfig c(t.num_qubits());
  c.set(0, 1);
  c.set(4, 1);
  EXPECT_EQ(energy(inst, c), -28);
}

TEST(Energy, GlobalFlipSymmetryWithoutFields) {
  const ProblemRegion region(build_topology(2, 4), 2, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = generate_instance(region, false, seed);
    SpinConfig up(region.topology().num_qubits()), down(region.topology().num_qubits());
    for (QubitId q : region.qubits()) {
      up.set(q, 1);
      down.set(q, -1);
    }
    EXPECT_EQ(energy(inst, up), energy(inst, down));
    SpinConfig c = random_config(inst, seed);
    SpinConfig flipped = c;
    for (QubitId q : region.qubits()) flipped.flip(q);
    EXPECT_EQ(energy(inst, c), energy(inst, flipped));
  }
}

TEST(Energy, MatchesDirectSummationOracle) {
  const ProblemRegion region(build_topology(1, 2), 1, 1);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = generate_instance(region, seed % 2 == 0, seed);
    const auto c = random_config(inst, seed + 1000);
    EXPECT_EQ(energy(inst, c), oracle::direct_energy(oracle::terms_of(inst), as_map(inst, c)));
  }
}

TEST(Energy, FrozenSeededSingleCellValue) {
  // Frozen from the direct-summation oracle: the all-up configuration of the
  // seed-2024 single-cell instance with fields.
  const ProblemRegion region(build_topology(1, 2), 1, 1);
  const auto inst = generate_instance(region, true, 2024);
  SpinConfig up(region.topology().num_qubits());
  for (QubitId q : region.qubits()) up.set(q, 1);
  std::map<QubitId, int> spins;
  for (QubitId q : region.qubits()) spins[q] = 1;
  const std::int64_t expected = oracle::direct_energy(oracle::terms_of(inst), spins);
  EXPECT_EQ(energy(inst, up), expected);
  EXPECT_EQ(expected, kFrozenAllUpEnergy2024);
}

TEST(Energy, MissingQubitIsAnError) {
  const ProblemRegion region(build_topology(1, 2), 1, 1);
  const auto inst = generate_instance(region, false, 3);
  SpinConfig c(region.topology().num_qubits());
  for (QubitId q : region.qubits()) c.set(q, 1);
  c.set(region.qubits()[3], 0);
  EXPECT_THROW(energy(inst, c), ValidationError);
}

TEST(GenerateBatch, SeedsFollowDeriveRule) {
  const ProblemRegion region(build_topology(4, 8), 4, 1);
  const auto batch = generate_batch(region, 1000, false, 77);
  std::set<std::uint64_t> seeds;
  for (const auto& inst : batch.instances) seeds.insert(inst.seed);
  EXPECT_EQ(seeds.size(), 1000u);

  const auto one = generate_batch(region, 1, true, 77);
  ASSERT_EQ(one.instances.size(), 1u);
  EXPECT_EQ(one.instances[0], generate_instance(region, true, derive_seed(77, 0)));

  const auto again = generate_batch(region, 1000, false, 77);
  EXPECT_EQ(batch.instances, again.instances);
  EXPECT_THROW(generate_batch(region, 0, false, 1), ValidationError);
}
