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

// Test-only reference implementations. They read the raw term lists of a
// problem and share no code with the library's energy or enumeration paths.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mirrorbench/embedding.hpp"

namespace oracle {

using mirrorbench::QubitId;

struct Term {
  QubitId a;
  QubitId b;  // == a for a field term
  std::int64_t value;
};

// Flat list of every term of H_T (couplings, fields, mirror couplings).
inline std::vector<Term> terms_of(const mirrorbench::CompositeProblem& p) {
  std::vector<Term> out;
  for (const auto& t : p.couplings()) out.push_back({t.coupler.a, t.coupler.b, t.value});
  for (const auto& f : p.fields()) out.push_back({f.qubit, f.qubit, f.value});
  for (const auto& m : p.mirror_pairs()) out.push_back({m.left, m.right, m.strength});
  return out;
}

inline std::vector<Term> terms_of(const mirrorbench::IsingInstance& inst) {
  std::vector<Term> out;
  for (const auto& t : inst.couplings) out.push_back({t.coupler.a, t.coupler.b, t.value});
  for (const auto& f : inst.fields) out.push_back({f.qubit, f.qubit, f.value});
  return out;
}

// H = -sum_terms v * S_a * S_b (a field term contributes -v * S_a).
inline std::int64_t direct_energy(const std::vector<Term>& terms, const std::map<QubitId, int>& spins) {
  std::int64_t e = 0;
  for (const Term& t : terms) {
    if (t.a == t.b) {
      e -= t.value * spins.at(t.a);
    } else {
      e -= t.value * spins.at(t.a) * spins.at(t.b);
    }
  }
  return e;
}

struct Minima {
  std::int64_t energy = 0;
  // Each minimum as a string over `qubits` order: '+' / '-'.
  std::set<std::string> configs;
};

// Plain binary counting with a full energy recomputation per configuration.
inline Minima brute_force_minima(const std::vector<Term>& terms, const std::vector<QubitId>& qubits) {
  Minima out;
  bool first = true;
  const std::uint64_t total = std::uint64_t{1} << qubits.size();
  std::map<QubitId, int> spins;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::string text(qubits.size(), '+');
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      const bool down = (code >> i) & 1U;
      spins[qubits[i]] = down ? -1 : 1;
      text[i] = down ? '-' : '+';
    }
    const std::int64_t e = direct_energy(terms, spins);
    if (first || e < out.energy) {
      out.energy = e;
      out.configs.clear();
      first = false;
    }
    if (e == out.energy) out.configs.insert(text);
  }
  return out;
}

}  // namespace oracle
