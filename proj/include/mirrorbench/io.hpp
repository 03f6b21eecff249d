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

// JSON documents exchanged between pipeline stages and external samplers.
// Every writer emits keys in sorted order and arrays in canonical order, so
// equal objects serialize to identical bytes.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mirrorbench/embedding.hpp"
#include "mirrorbench/instances.hpp"
#include "mirrorbench/solvers.hpp"
#include "mirrorbench/topology.hpp"

namespace mirrorbench {

using Json = nlohmann::json;

// {"rows", "cols", "dead_qubits": [q...], "dead_couplers": [[a,b]...]}
Json topology_to_json(const ChimeraTopology& topology);
ChimeraTopology topology_from_json(const Json& doc);

// {"region": {"topology", "rows", "cols", "split_col"}, "couplings": [[a,b,v]...],
//  "fields": [[q,v]...], "seed", "scale": 28}
Json instance_to_json(const IsingInstance& instance);
IsingInstance instance_from_json(const Json& doc);

// Instance schema with couplings/fields over both halves, plus
// "mirror_pairs": [[q,q',M]...], "mirror_sign" and "mirror_strength".
Json composite_to_json(const CompositeProblem& problem);
CompositeProblem composite_from_json(const Json& doc);

// {"backend", "digest", "reads", "seed", "scale", "variables": [q...],
//  "entries": [[bits, energy, occurrences]...]}
Json sample_set_to_json(const SampleSet& set);
// Accepts a bare sample set document or a wrapper carrying it under
// "sample_set" (extra keys such as device metadata are ignored).
SampleSet sample_set_from_json(const Json& doc);

std::string dump_canonical(const Json& doc);
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace mirrorbench
