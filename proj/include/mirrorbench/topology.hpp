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

#include <compare>
#include <cstdint>
#include <vector>

namespace mirrorbench {

// Qubit ids are laid out row-major over unit cells with the intra-cell index
// fastest: id = 8 * (cell_row * cols + cell_col) + intra.
using QubitId = std::int32_t;

inline constexpr int kQubitsPerCell = 8;

struct CellCoord {
  int row = 0;
  int col = 0;
  int intra = 0;  // 0..3 vertical partition, 4..7 horizontal partition

  friend bool operator==(const CellCoord&, const CellCoord&) = default;
};

// Undirected coupler, always normalized so that a < b.
struct Coupler {
  QubitId a = 0;
  QubitId b = 0;

  static Coupler between(QubitId x, QubitId y) noexcept {
    return x < y ? Coupler{x, y} : Coupler{y, x};
  }
  friend auto operator<=>(const Coupler&, const Coupler&) = default;
};

// Chimera graph C_{rows,cols}: a grid of K_{4,4} unit cells.
//
//   intra-cell: {0..3} x {4..7}, complete bipartite (16 per cell)
//   vertical:   intra k in 0..3 of (r, c)  <->  same k of (r + 1, c)
//   horizontal: intra k in 4..7 of (r, c)  <->  same k of (r, c + 1)
//
// Dead couplers always include every coupler incident to a dead qubit.
// Immutable once built.
class ChimeraTopology {
 public:
  // Throws ValidationError for non-positive dimensions, out-of-range qubit
  // ids, or pairs that are not Chimera couplers.
  ChimeraTopology(int rows, int cols, std::vector<QubitId> dead_qubits = {},
                  std::vector<Coupler> dead_couplers = {});

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int num_qubits() const noexcept { return kQubitsPerCell * rows_ * cols_; }

  bool contains(QubitId q) const noexcept { return q >= 0 && q < num_qubits(); }
  QubitId qubit(int row, int col, int intra) const;
  CellCoord coord(QubitId q) const;

  // True iff {a, b} is a coupler of the ideal (fully functional) graph.
  bool is_coupler(Coupler c) const noexcept;

  bool qubit_alive(QubitId q) const;
  bool coupler_alive(Coupler c) const;

  // Sorted ascending.
  const std::vector<QubitId>& dead_qubits() const noexcept { return dead_qubits_; }
  const std::vector<Coupler>& dead_couplers() const noexcept { return dead_couplers_; }

  // Every coupler of the ideal graph, sorted ascending.
  std::vector<Coupler> all_couplers() const;
  std::vector<QubitId> functional_qubits() const;
  std::vector<Coupler> functional_couplers() const;

  friend bool operator==(const ChimeraTopology& x, const ChimeraTopology& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.dead_qubits_ == y.dead_qubits_ &&
           x.dead_couplers_ == y.dead_couplers_;
  }

 private:
  int rows_;
  int cols_;
  std::vector<QubitId> dead_qubits_;
  std::vector<Coupler> dead_couplers_;
  std::vector<bool> qubit_dead_mask_;
};

ChimeraTopology build_topology(int rows, int cols, std::vector<QubitId> dead_qubits = {},
                               std::vector<Coupler> dead_couplers = {});

// Plane between unit-cell columns split_col - 1 and split_col. Cells with
// col < split_col form the left region; the crossing couplers are the
// horizontal inter-cell couplers (intra 4..7) between those two columns.
struct MirrorPlane {
  int split_col = 0;

  // Plane splitting the grid into two halves of equal width. Throws if the
  // column count is odd.
  static MirrorPlane centered(const ChimeraTopology& topology);
  bool valid_for(const ChimeraTopology& topology) const noexcept {
    return split_col >= 1 && 2 * split_col == topology.cols();
  }
  friend bool operator==(const MirrorPlane&, const MirrorPlane&) = default;
};

// Reflects cell_col -> 2 * split_col - 1 - cell_col; row and intra index are
// preserved. An involution on qubit ids.
QubitId mirror_map(const ChimeraTopology& topology, const MirrorPlane& plane, QubitId q);
Coupler mirror_map(const ChimeraTopology& topology, const MirrorPlane& plane, Coupler c);

// Union of the dead sets with their mirror images.
ChimeraTopology symmetrize_dead_sets(const ChimeraTopology& topology, const MirrorPlane& plane);

bool is_mirror_symmetric(const ChimeraTopology& topology, const MirrorPlane& plane);

// 1 + distance in unit-cell columns from the plane; both columns touching
// the plane have index 1.
int column_of(const ChimeraTopology& topology, const MirrorPlane& plane, QubitId q);

// Marks each qubit dead independently with the given probability, using its
// own seed. Output is sorted.
std::vector<QubitId> sample_dead_qubits(int rows, int cols, double probability,
                                        std::uint64_t seed);

// Problem subgraph G: the first `rows` cell rows and the `cols` cell columns
// flush against the left side of the plane. The topology is symmetrized on
// construction so that G and its mirror image are isomorphic.
class ProblemRegion {
 public:
  ProblemRegion(const ChimeraTopology& topology, int rows, int cols);

  const ChimeraTopology& topology() const noexcept { return topology_; }
  const MirrorPlane& plane() const noexcept { return plane_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  int first_col() const noexcept { return plane_.split_col - cols_; }

  bool contains(QubitId q) const;
  // Functional qubits and couplers inside G, sorted.
  const std::vector<QubitId>& qubits() const noexcept { return qubits_; }
  const std::vector<Coupler>& couplers() const noexcept { return couplers_; }

  friend bool operator==(const ProblemRegion& x, const ProblemRegion& y) {
    return x.topology_ == y.topology_ && x.rows_ == y.rows_ && x.cols_ == y.cols_;
  }

 private:
  ChimeraTopology topology_;
  MirrorPlane plane_;
  int rows_;
  int cols_;
  std::vector<QubitId> qubits_;
  std::vector<Coupler> couplers_;
};

}  // namespace mirrorbench
