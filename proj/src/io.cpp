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

#include "mirrorbench/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "mirrorbench/error.hpp"

namespace mirrorbench {

namespace {

// Wraps nlohmann's exceptions so callers only ever see ValidationError.
template <typename T>
T field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ValidationError(std::string("missing field '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("field '") + key + "' has the wrong type: " + e.what());
  }
}

void require_scale(const Json& doc) {
  if (field<int>(doc, "scale") != kScale) {
    throw ValidationError("unsupported scale denominator; expected " + std::to_string(kScale));
  }
}

std::vector<CouplingTerm> couplings_from(const Json& doc) {
  std::vector<CouplingTerm> out;
  for (const auto& t : field<std::vector<std::array<std::int64_t, 3>>>(doc, "couplings")) {
    out.push_back({Coupler::between(static_cast<QubitId>(t[0]), static_cast<QubitId>(t[1])),
                   static_cast<std::int32_t>(t[2])});
  }
  return out;
}

std::vector<FieldTerm> fields_from(const Json& doc) {
  std::vector<FieldTerm> out;
  for (const auto& t : field<std::vector<std::array<std::int64_t, 2>>>(doc, "fields")) {
    out.push_back({static_cast<QubitId>(t[0]), static_cast<std::int32_t>(t[1])});
  }
  return out;
}

Json terms_to_json(const std::vector<CouplingTerm>& couplings) {
  Json out = Json::array();
  for (const auto& t : couplings) out.push_back({t.coupler.a, t.coupler.b, t.value});
  return out;
}

Json terms_to_json(const std::vector<FieldTerm>& fields) {
  Json out = Json::array();
  for (const auto& f : fields) out.push_back({f.qubit, f.value});
  return out;
}

Json region_to_json(const ProblemRegion& region) {
  return {{"topology", topology_to_json(region.topology())},
          {"rows", region.rows()},
          {"cols", region.cols()},
          {"split_col", region.plane().split_col}};
}

ProblemRegion region_from_json(const Json& doc) {
  const Json region = field<Json>(doc, "region");
  ProblemRegion out(topology_from_json(field<Json>(region, "topology")), field<int>(region, "rows"),
                    field<int>(region, "cols"));
  if (field<int>(region, "split_col") != out.plane().split_col) {
    throw ValidationError("region split_col does not match the centered mirror plane");
  }
  if (!(out.topology() == topology_from_json(field<Json>(region, "topology")))) {
    throw ValidationError("region topology dead sets are not mirror-symmetric");
  }
  return out;
}

}  // namespace

Json topology_to_json(const ChimeraTopology& topology) {
  Json couplers = Json::array();
  for (const auto& c : topology.dead_couplers()) couplers.push_back({c.a, c.b});
  return {{"rows", topology.rows()},
          {"cols", topology.cols()},
          {"dead_qubits", topology.dead_qubits()},
          {"dead_couplers", couplers}};
}

ChimeraTopology topology_from_json(const Json& doc) {
  std::vector<Coupler> couplers;
  for (const auto& c : field<std::vector<std::array<QubitId, 2>>>(doc, "dead_couplers")) {
    couplers.push_back(Coupler::between(c[0], c[1]));
  }
  return ChimeraTopology(field<int>(doc, "rows"), field<int>(doc, "cols"),
                         field<std::vector<QubitId>>(doc, "dead_qubits"), std::move(couplers));
}

Json instance_to_json(const IsingInstance& instance) {
  return {{"region", region_to_json(instance.region)},
          {"couplings", terms_to_json(instance.couplings)},
          {"fields", terms_to_json(instance.fields)},
          {"seed", instance.seed},
          {"scale", kScale}};
}

IsingInstance instance_from_json(const Json& doc) {
  require_scale(doc);
  IsingInstance out{region_from_json(doc), couplings_from(doc), fields_from(doc),
                    field<std::uint64_t>(doc, "seed")};
  out.validate();
  return out;
}

Json composite_to_json(const CompositeProblem& problem) {
  Json pairs = Json::array();
  for (const auto& p : problem.mirror_pairs()) pairs.push_back({p.left, p.right, p.strength});
  return {{"region", region_to_json(problem.region())},
          {"couplings", terms_to_json(problem.couplings())},
          {"fields", terms_to_json(problem.fields())},
          {"seed", problem.instance().seed},
          {"scale", kScale},
          {"mirror_pairs", pairs},
          {"mirror_sign", sign_value(problem.mirror_sign())},
          {"mirror_strength", problem.mirror_strength()}};
}

CompositeProblem composite_from_json(const Json& doc) {
  require_scale(doc);
  const ProblemRegion region = region_from_json(doc);
  const auto couplings = couplings_from(doc);
  const auto fields = fields_from(doc);

  IsingInstance instance{region, {}, {}, field<std::uint64_t>(doc, "seed")};
  for (const auto& t : couplings) {
    if (region.contains(t.coupler.a) && region.contains(t.coupler.b)) instance.couplings.push_back(t);
  }
  for (const auto& f : fields) {
    if (region.contains(f.qubit)) instance.fields.push_back(f);
  }
  std::sort(instance.couplings.begin(), instance.couplings.end(),
            [](const CouplingTerm& x, const CouplingTerm& y) { return x.coupler < y.coupler; });
  std::sort(instance.fields.begin(), instance.fields.end(),
            [](const FieldTerm& x, const FieldTerm& y) { return x.qubit < y.qubit; });

  const int sign = field<int>(doc, "mirror_sign");
  if (sign != 1 && sign != -1) throw ValidationError("mirror_sign must be +1 or -1");
  CompositeProblem built = build_composite(instance, field<std::int32_t>(doc, "mirror_strength"),
                                           static_cast<MirrorSign>(sign));
  // The document must be exactly what build_composite produces: a copy that
  // breaks the mirror relations would invalidate every symmetry verdict.
  std::vector<MirrorPair> pairs;
  for (const auto& p : field<std::vector<std::array<std::int64_t, 3>>>(doc, "mirror_pairs")) {
    pairs.push_back({static_cast<QubitId>(p[0]), static_cast<QubitId>(p[1]), static_cast<std::int32_t>(p[2])});
  }
  CompositeProblem parsed(instance, couplings, fields, pairs, static_cast<MirrorSign>(sign),
                          built.mirror_strength());
  if (!(parsed == built)) {
    throw ValidationError("composite document is not the mirror composite of its left half");
  }
  return built;
}

Json sample_set_to_json(const SampleSet& set) {
  Json entries = Json::array();
  for (const auto& s : set.entries) entries.push_back({to_bitstring(s.spins), s.energy, s.occurrences});
  return {{"backend", set.backend},
          {"digest", set.digest},
          {"reads", set.reads},
          {"seed", set.seed},
          {"scale", kScale},
          {"variables", set.variables},
          {"entries", entries}};
}

SampleSet sample_set_from_json(const Json& doc) {
  if (doc.is_object() && doc.contains("sample_set")) return sample_set_from_json(doc.at("sample_set"));
  require_scale(doc);
  SampleSet out;
  out.backend = field<std::string>(doc, "backend");
  out.digest = field<std::string>(doc, "digest");
  out.reads = field<std::uint64_t>(doc, "reads");
  out.seed = field<std::uint64_t>(doc, "seed");
  out.variables = field<std::vector<QubitId>>(doc, "variables");
  const Json entries = field<Json>(doc, "entries");
  if (!entries.is_array()) throw ValidationError("field 'entries' must be an array");
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_number_integer() ||
        !e[2].is_number_unsigned()) {
      throw ValidationError("sample entries must be [bits, energy, occurrences]");
    }
    Sample s{from_bitstring(e[0].get<std::string>()), e[1].get<Energy>(), e[2].get<std::uint64_t>()};
    if (s.spins.size() != out.variables.size()) {
      throw ValidationError("sample bit string length does not match the variable count");
    }
    out.entries.push_back(std::move(s));
  }
  return out;
}

std::string dump_canonical(const Json& doc) { return doc.dump() + "\n"; }

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mirrorbench
