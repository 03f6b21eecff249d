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
#include <optional>
#include <vector>

#include "mirrorbench/instances.hpp"
#include "mirrorbench/topology.hpp"

namespace mirrorbench {

// Ferromagnetic mirror couplings enforce S_k = S_k'; antiferromagnetic ones
// enforce S_k = -S_k' and come with sign-flipped fields on the copy.
enum class MirrorSign : int { ferro = 1, antiferro = -1 };

inline int sign_value(MirrorSign s) noexcept { return static_cast<int>(s); }

struct MirrorPair {
  QubitId left = 0;   // in G, column adjacent to the plane
  QubitId right = 0;  // its mirror image in G'
  std::int32_t strength = 0;
  friend bool operator==(const MirrorPair&, const MirrorPair&) = default;
};

// H_T = H_prob + H'_prob + H_M with H_M = -sum_k M_k S_k S_k'.
class CompositeProblem {
 public:
  CompositeProblem(IsingInstance instance, std::vector<CouplingTerm> couplings,
                   std::vector<FieldTerm> fields, std::vector<MirrorPair> mirror_pairs,
                   MirrorSign sign, std::int32_t mirror_strength);

  const IsingInstance& instance() const noexcept { return instance_; }
  const ProblemRegion& region() const noexcept { return instance_.region; }
  const ChimeraTopology& topology() const noexcept { return instance_.region.topology(); }
  const MirrorPlane& plane() const noexcept { return instance_.region.plane(); }

  // Both halves; mirror couplings are kept separately in mirror_pairs().
  const std::vector<CouplingTerm>& couplings() const noexcept { return couplings_; }
  const std::vector<FieldTerm>& fields() const noexcept { return fields_; }
  const std::vector<MirrorPair>& mirror_pairs() const noexcept { return mirror_pairs_; }
  MirrorSign mirror_sign() const noexcept { return sign_; }
  // |M_k|, in units of 1/28.
  std::int32_t mirror_strength() const noexcept { return strength_; }

  // Functional qubits of G and G', sorted.
  const std::vector<QubitId>& qubits() const noexcept { return qubits_; }
  QubitId mirror_of(QubitId q) const { return mirror_map(topology(), plane(), q); }
  bool in_left_half(QubitId q) const { return topology().coord(q).col < plane().split_col; }

  friend bool operator==(const CompositeProblem& x, const CompositeProblem& y) {
    return x.instance_ == y.instance_ && x.couplings_ == y.couplings_ && x.fields_ == y.fields_ &&
           x.mirror_pairs_ == y.mirror_pairs_ && x.sign_ == y.sign_ && x.strength_ == y.strength_;
  }

 private:
  IsingInstance instance_;
  std::vector<CouplingTerm> couplings_;
  std::vector<FieldTerm> fields_;
  std::vector<MirrorPair> mirror_pairs_;
  MirrorSign sign_;
  std::int32_t strength_;
  std::vector<QubitId> qubits_;
};

// Places G flush against the plane (its region already is), copies it to the
// mirror side, and couples every functional crossing pair of the
// plane-adjacent column with M_k = sign * |mirror_strength|.
//
// Throws ValidationError when |mirror_strength| > 28 or no functional crossing
// pair exists.
CompositeProblem build_composite(const IsingInstance& instance, std::int32_t mirror_strength,
                                 MirrorSign sign);

Energy composite_energy(const CompositeProblem& problem, const SpinConfig& config);

// Ferro: copies sigma across the plane. Antiferro: copies -sigma.
SpinConfig symmetric_extension(const CompositeProblem& problem, const SpinConfig& sigma);

// The half-grid swap that leaves H_T invariant: S'_i <- S_{mirror(i)} in ferro
// mode, with an extra spin flip in antiferro mode.
SpinConfig exchange_halves(const CompositeProblem& problem, const SpinConfig& config);

}  // namespace mirrorbench
