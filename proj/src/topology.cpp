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

#include "mirrorbench/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "mirrorbench/error.hpp"
#include "mirrorbench/rng.hpp"

namespace mirrorbench {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string describe(Coupler c) {
  return "[" + std::to_string(c.a) + "," + std::to_string(c.b) + "]";
}

}  // namespace

ChimeraTopology::ChimeraTopology(int rows, int cols, std::vector<QubitId> dead_qubits,
                                 std::vector<Coupler> dead_couplers)
    : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw ValidationError("chimera grid needs at least one row and one column, got " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
  for (QubitId q : dead_qubits) {
    if (!contains(q)) {
      throw ValidationError("dead qubit id " + std::to_string(q) + " out of range [0, " +
                            std::to_string(num_qubits()) + ")");
    }
  }
  for (Coupler& c : dead_couplers) {
    c = Coupler::between(c.a, c.b);
    if (!contains(c.a) || !contains(c.b)) {
      throw ValidationError("dead coupler " + describe(c) + " has a qubit id out of range");
    }
    if (!is_coupler(c)) {
      throw ValidationError("dead coupler " + describe(c) + " is not a chimera coupler");
    }
  }
  sort_unique(dead_qubits);
  qubit_dead_mask_.assign(static_cast<std::size_t>(num_qubits()), false);
  for (QubitId q : dead_qubits) qubit_dead_mask_[static_cast<std::size_t>(q)] = true;

  // Closure: couplers touching a dead qubit are dead.
  for (const Coupler& c : all_couplers()) {
    if (qubit_dead_mask_[static_cast<std::size_t>(c.a)] ||
        qubit_dead_mask_[static_cast<std::size_t>(c.b)]) {
      dead_couplers.push_back(c);
    }
  }
  sort_unique(dead_couplers);
  dead_qubits_ = std::move(dead_qubits);
  dead_couplers_ = std::move(dead_couplers);
}

QubitId ChimeraTopology::qubit(int row, int col, int intra) const {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_ || intra < 0 || intra >= kQubitsPerCell) {
    throw ValidationError("cell coordinate (" + std::to_string(row) + "," + std::to_string(col) +
                          "," + std::to_string(intra) + ") outside the grid");
  }
  return kQubitsPerCell * (row * cols_ + col) + intra;
}

CellCoord ChimeraTopology::coord(QubitId q) const {
  if (!contains(q)) {
    throw ValidationError("qubit id " + std::to_string(q) + " out of range [0, " +
                          std::to_string(num_qubits()) + ")");
  }
  const int cell = q / kQubitsPerCell;
  return {cell / cols_, cell % cols_, q % kQubitsPerCell};
}

bool ChimeraTopology::is_coupler(Coupler c) const noexcept {
  if (!contains(c.a) || !contains(c.b) || c.a == c.b) return false;
  const int cell_a = c.a / kQubitsPerCell, cell_b = c.b / kQubitsPerCell;
  const int ka = c.a % kQubitsPerCell, kb = c.b % kQubitsPerCell;
  const int ra = cell_a / cols_, ca = cell_a % cols_;
  const int rb = cell_b / cols_, cb = cell_b % cols_;
  if (cell_a == cell_b) return (ka < 4) != (kb < 4);
  if (ka != kb) return false;
  if (ka < 4) return ca == cb && std::abs(ra - rb) == 1;
  return ra == rb && std::abs(ca - cb) == 1;
}

bool ChimeraTopology::qubit_alive(QubitId q) const {
  if (!contains(q)) throw ValidationError("qubit id " + std::to_string(q) + " out of range");
  return !qubit_dead_mask_[static_cast<std::size_t>(q)];
}

bool ChimeraTopology::coupler_alive(Coupler c) const {
  c = Coupler::between(c.a, c.b);
  if (!is_coupler(c)) throw ValidationError(describe(c) + " is not a chimera coupler");
  return !std::binary_search(dead_couplers_.begin(), dead_couplers_.end(), c);
}

std::vector<Coupler> ChimeraTopology::all_couplers() const {
  std::vector<Coupler> out;
  out.reserve(static_cast<std::size_t>(16 * rows_ * cols_ + 4 * cols_ * (rows_ - 1) +
                                       4 * rows_ * (cols_ - 1)));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      for (int k = 0; k < 4; ++k) {
        for (int j = 4; j < 8; ++j) out.push_back(Coupler::between(qubit(r, c, k), qubit(r, c, j)));
        if (r + 1 < rows_) out.push_back(Coupler::between(qubit(r, c, k), qubit(r + 1, c, k)));
      }
      for (int k = 4; k < 8; ++k) {
        if (c + 1 < cols_) out.push_back(Coupler::between(qubit(r, c, k), qubit(r, c + 1, k)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<QubitId> ChimeraTopology::functional_qubits() const {
  std::vector<QubitId> out;
  for (QubitId q = 0; q < num_qubits(); ++q) {
    if (!qubit_dead_mask_[static_cast<std::size_t>(q)]) out.push_back(q);
  }
  return out;
}

std::vector<Coupler> ChimeraTopology::functional_couplers() const {
  std::vector<Coupler> out;
  for (const Coupler& c : all_couplers()) {
    if (!std::binary_search(dead_couplers_.begin(), dead_couplers_.end(), c)) out.push_back(c);
  }
  return out;
}

ChimeraTopology build_topology(int rows, int cols, std::vector<QubitId> dead_qubits,
                               std::vector<Coupler> dead_couplers) {
  return ChimeraTopology(rows, cols, std::move(dead_qubits), std::move(dead_couplers));
}

MirrorPlane MirrorPlane::centered(const ChimeraTopology& topology) {
  if (topology.cols() % 2 != 0) {
    throw ValidationError("mirror plane needs an even number of cell columns, got " +
                          std::to_string(topology.cols()));
  }
  return MirrorPlane{topology.cols() / 2};
}

namespace {

void require_plane(const ChimeraTopology& topology, const MirrorPlane& plane) {
  if (!plane.valid_for(topology)) {
    throw ValidationError("mirror plane at column " + std::to_string(plane.split_col) +
                          " does not split a " + std::to_string(topology.cols()) +
                          "-column grid into equal halves");
  }
}

}  // namespace

QubitId mirror_map(const ChimeraTopology& topology, const MirrorPlane& plane, QubitId q) {
  require_plane(topology, plane);
  const CellCoord at = topology.coord(q);
  return topology.qubit(at.row, 2 * plane.split_col - 1 - at.col, at.intra);
}

Coupler mirror_map(const ChimeraTopology& topology, const MirrorPlane& plane, Coupler c) {
  return Coupler::between(mirror_map(topology, plane, c.a), mirror_map(topology, plane, c.b));
}

ChimeraTopology symmetrize_dead_sets(const ChimeraTopology& topology, const MirrorPlane& plane) {
  require_plane(topology, plane);
  std::vector<QubitId> qubits = topology.dead_qubits();
  for (QubitId q : topology.dead_qubits()) qubits.push_back(mirror_map(topology, plane, q));
  std::vector<Coupler> couplers = topology.dead_couplers();
  for (const Coupler& c : topology.dead_couplers()) couplers.push_back(mirror_map(topology, plane, c));
  return ChimeraTopology(topology.rows(), topology.cols(), std::move(qubits), std::move(couplers));
}

bool is_mirror_symmetric(const ChimeraTopology& topology, const MirrorPlane& plane) {
  return symmetrize_dead_sets(topology, plane) == topology;
}

int column_of(const ChimeraTopology& topology, const MirrorPlane& plane, QubitId q) {
  require_plane(topology, plane);
  const int col = topology.coord(q).col;
  return col < plane.split_col ? plane.split_col - col : col - plane.split_col + 1;
}

std::vector<QubitId> sample_dead_qubits(int rows, int cols, double probability,
                                        std::uint64_t seed) {
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ValidationError("dead-qubit probability must lie in [0, 1]");
  }
  SplitMix64 rng(seed);
  std::vector<QubitId> out;
  const int n = kQubitsPerCell * rows * cols;
  for (QubitId q = 0; q < n; ++q) {
    if (rng.uniform() < probability) out.push_back(q);
  }
  return out;
}

ProblemRegion::ProblemRegion(const ChimeraTopology& topology, int rows, int cols)
    : topology_(symmetrize_dead_sets(topology, MirrorPlane::centered(topology))),
      plane_(MirrorPlane::centered(topology)),
      rows_(rows),
      cols_(cols) {
  if (rows < 1 || rows > topology_.rows()) {
    throw ValidationError("problem region needs 1.." + std::to_string(topology_.rows()) +
                          " rows, got " + std::to_string(rows));
  }
  if (cols < 1 || cols > plane_.split_col) {
    throw ValidationError("problem region " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " is wider than the half-grid (" + std::to_string(plane_.split_col) +
                          " columns)");
  }
  for (QubitId q : topology_.functional_qubits()) {
    if (contains(q)) qubits_.push_back(q);
  }
  for (const Coupler& c : topology_.functional_couplers()) {
    if (contains(c.a) && contains(c.b)) couplers_.push_back(c);
  }
}

bool ProblemRegion::contains(QubitId q) const {
  const CellCoord at = topology_.coord(q);
  return at.row < rows_ && at.col >= first_col() && at.col < plane_.split_col;
}

}  // namespace mirrorbench
