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

#include <filesystem>

#include "gtest/gtest.h"
#include "mirrorbench/error.hpp"

using namespace mirrorbench;

namespace {

CompositeProblem sample_problem(MirrorSign sign = MirrorSign::antiferro) {
  const ProblemRegion region(build_topology(2, 4, {3, 21}), 2, 2);
  return build_composite(generate_instance(region, true, 404), 19, sign);
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mirrorbench_io_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(TopologyJson, RoundTripsByteIdentically) {
  const auto t = build_topology(3, 4, {5, 60}, {Coupler::between(0, 4)});
  const auto text = dump_canonical(topology_to_json(t));
  const auto back = topology_from_json(Json::parse(text));
  EXPECT_EQ(back, t);
  EXPECT_EQ(dump_canonical(topology_to_json(back)), text);
}

TEST(InstanceJson, RoundTripsByteIdentically) {
  const ProblemRegion region(build_topology(2, 4, {9}), 2, 2);
  const auto inst = generate_instance(region, true, 12);
  const auto text = dump_canonical(instance_to_json(inst));
  const auto back = instance_from_json(Json::parse(text));
  EXPECT_EQ(back, inst);
  EXPECT_EQ(dump_canonical(instance_to_json(back)), text);
  EXPECT_EQ(Json::parse(text).at("scale"), 28);
}

TEST(InstanceJson, RejectsWrongScaleAndMissingFields) {
  const ProblemRegion region(build_topology(1, 2), 1, 1);
  auto doc = instance_to_json(generate_instance(region, false, 1));
  auto wrong_scale = doc;
  wrong_scale["scale"] = 100;
  EXPECT_THROW(instance_from_json(wrong_scale), ValidationError);
  auto missing = doc;
  missing.erase("couplings");
  try {
    instance_from_json(missing);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("couplings"), std::string::npos);
  }
}

TEST(CompositeJson, RoundTripsBothSigns) {
  for (MirrorSign sign : {MirrorSign::ferro, MirrorSign::antiferro}) {
    const auto p = sample_problem(sign);
    const auto doc = composite_to_json(p);
    EXPECT_EQ(doc.at("mirror_sign"), sign_value(sign));
    EXPECT_EQ(doc.at("mirror_pairs").size(), p.mirror_pairs().size());
    const auto text = dump_canonical(doc);
    const auto back = composite_from_json(Json::parse(text));
    EXPECT_EQ(back, p);
    EXPECT_EQ(dump_canonical(composite_to_json(back)), text);
  }
}

TEST(CompositeJson, RejectsTamperedCopy) {
  auto doc = composite_to_json(sample_problem());
  // Change one right-half field so the copy no longer mirrors G.
  auto& fields = doc.at("fields");
  for (auto& f : fields) {
    if (f[0].get<int>() % 32 >= 16) {
      f[1] = f[1].get<int>() == 8 ? 13 : 8;
      break;
    }
  }
  EXPECT_THROW(composite_from_json(doc), ValidationError);

  auto bad_pair = composite_to_json(sample_problem());
  bad_pair.at("mirror_pairs")[0][2] = 5;
  EXPECT_THROW(composite_from_json(bad_pair), ValidationError);
}

TEST(SampleSetJson, RoundTripsByteIdentically) {
  const auto p = sample_problem();
  ScheduleConfig schedule;
  schedule.sweeps = 20;
  const auto set = solve_sa(p, schedule, 30, 6);
  const auto text = dump_canonical(sample_set_to_json(set));
  const auto back = sample_set_from_json(Json::parse(text));
  EXPECT_EQ(back, set);
  EXPECT_EQ(dump_canonical(sample_set_to_json(back)), text);
  EXPECT_EQ(ingest(p, back), set);
}

TEST(SampleSetJson, AcceptsWrapperWithDeviceMetadata) {
  const auto p = sample_problem(MirrorSign::ferro);
  ScheduleConfig schedule;
  schedule.sweeps = 10;
  const auto set = solve_sa(p, schedule, 8, 1);
  Json wrapper = {{"sample_set", sample_set_to_json(set)},
                  {"device", {{"name", "mock"}, {"qubit_count", 2048}, {"calibration_id", "c-17"}}},
                  {"annealing_time_us", 2000}};
  const auto parsed = sample_set_from_json(wrapper);
  EXPECT_EQ(parsed, set);
  EXPECT_EQ(ingest(p, parsed), set);
}

TEST(SampleSetJson, IngestRejectsEnergyMismatch) {
  const auto p = sample_problem();
  ScheduleConfig schedule;
  schedule.sweeps = 10;
  auto doc = sample_set_to_json(solve_sa(p, schedule, 8, 1));
  doc.at("entries")[0][1] = doc.at("entries")[0][1].get<std::int64_t>() - 2;
  const auto parsed = sample_set_from_json(doc);
  EXPECT_THROW(ingest(p, parsed), ValidationError);

  auto short_bits = sample_set_to_json(solve_sa(p, schedule, 8, 1));
  short_bits.at("entries")[0][0] = "01";
  EXPECT_THROW(sample_set_from_json(short_bits), ValidationError);
}

TEST(Files, WriteCreatesDirectoriesAndReadsBack) {
  const auto dir = scratch("files");
  const auto path = dir / "a" / "b" / "doc.json";
  const auto p = sample_problem();
  write_text_file(path, dump_canonical(composite_to_json(p)));
  EXPECT_EQ(composite_from_json(read_json_file(path)), p);
  EXPECT_THROW(read_json_file(dir / "missing.json"), ValidationError);
  write_text_file(dir / "broken.json", "{not json");
  EXPECT_THROW(read_json_file(dir / "broken.json"), ValidationError);
  std::filesystem::remove_all(dir);
}
