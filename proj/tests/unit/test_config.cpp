/*
 * Copyright 2026 The alspg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "alspg/bench/config.hpp"
#include "alspg/bench/set_json.hpp"

#include "random_sets.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace alspg::bench {
namespace {

namespace fs = std::filesystem;

const fs::path kConfigs = fs::path(ALSPG_SOURCE_DIR) / "configs";

json ik_document() {
  return json::parse(R"({
    "schema_version": 1, "name": "t", "kind": "ik", "solver": "alspg", "seed": 3,
    "model": {"name": "planar_arm", "lengths": [1, 1, 1]},
    "x0": [0.3, 0.4, 0.2],
    "task_set": {"type": "point", "target": [1.5, 1.2]}
  })");
}

std::string error_path(const json &doc, const Overrides &ov = {}) {
  try {
    parse_config(doc, ov);
  } catch (const ConfigError &e) {
    return e.path();
  }
  return "<accepted>";
}

TEST(Config, EveryBundledConfigValidates) {
  int count = 0;
  for (const auto &entry : fs::recursive_directory_iterator(kConfigs)) {
    if (entry.path().extension() != ".json") continue;
    const auto dir = entry.path().parent_path().filename();
    if (dir == "suites" || dir == "playground") continue;
    EXPECT_NO_THROW(load_config(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_EQ(count, 18);
}

TEST(Config, MissingSeedIsRejected) {
  json doc = ik_document();
  doc.erase("seed");
  EXPECT_EQ(error_path(doc), "/seed");
  // An override supplies it.
  Overrides ov;
  ov.seed = 5;
  EXPECT_EQ(parse_config(doc, ov).seed, 5u);
}

TEST(Config, UnknownFieldsAreRejectedWithTheirPath) {
  json doc = ik_document();
  doc["bogus"] = 1;
  EXPECT_EQ(error_path(doc), "/bogus");
  doc = ik_document();
  doc["task_set"]["radius"] = 2;
  EXPECT_EQ(error_path(doc), "/task_set/radius");
  doc = ik_document();
  doc["model"]["mass"] = 2;
  EXPECT_EQ(error_path(doc), "/model/mass");
}

TEST(Config, WrongTypesAndValues) {
  json doc = ik_document();
  doc["schema_version"] = 2;
  EXPECT_EQ(error_path(doc), "/schema_version");
  doc = ik_document();
  doc["x0"] = "zero";
  EXPECT_EQ(error_path(doc), "/x0");
  doc = ik_document();
  doc["x0"] = {0.1, 0.2};
  EXPECT_EQ(error_path(doc), "/x0");
  doc = ik_document();
  doc["kind"] = "dance";
  EXPECT_EQ(error_path(doc), "/kind");
  doc = ik_document();
  doc["task_set"] = {{"type", "annulus"}, {"center", {0, 0}}, {"inner_radius", 2}, {"outer_radius", 1}};
  EXPECT_EQ(error_path(doc), "/task_set");
}

TEST(Config, SolverCompatibility) {
  json doc = ik_document();
  doc["solver"] = "ilqr";
  EXPECT_EQ(error_path(doc), "/solver");
  Overrides ov;
  ov.solver = "spg";
  EXPECT_EQ(error_path(ik_document(), ov), "/solver");
  json planning = read_json_file(kConfigs / "obstacle_cars" / "case1.json");
  planning["solver"] = "ilqr";
  EXPECT_EQ(error_path(planning), "/solver");
  planning["solver"] = "alspg_noproj";
  EXPECT_EQ(error_path(planning), "<accepted>");
  EXPECT_THROW(parse_solver("newton"), ConfigError);
}

TEST(Config, OverridesReplaceTopLevelFields) {
  Overrides ov;
  ov.seed = 9;
  ov.solver = "alspg_noproj";
  const auto cfg = load_config(kConfigs / "obstacle_cars" / "case2.json", ov);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.solver, SolverKind::AlspgNoProj);
  EXPECT_EQ(cfg.document["seed"], 9);
  EXPECT_EQ(cfg.document["solver"], "alspg_noproj");
}

TEST(Config, SeededGoalsAreDeterministicAndInRange) {
  const json doc = read_json_file(kConfigs / "push" / "goal_random.json");
  std::set<double> distinct;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Overrides ov;
    ov.seed = seed;
    const auto a = parse_config(doc, ov);
    const auto b = parse_config(doc, ov);
    ASSERT_TRUE(a.cost.terminal);
    const Vector &goal = a.cost.terminal->goal;
    EXPECT_EQ(goal, b.cost.terminal->goal);
    EXPECT_GE(goal[0], 0.05);
    EXPECT_LE(goal[0], 0.15);
    EXPECT_GE(goal[2], std::acos(-1.0) / 6);
    EXPECT_LE(goal[2], std::acos(-1.0) / 2);
    distinct.insert(goal[0]);
  }
  EXPECT_EQ(distinct.size(), 10u);
}

TEST(Config, BySeedTargetsCycle) {
  const json doc = read_json_file(kConfigs / "scaling" / "reach_T100.json");
  Overrides ov;
  ov.seed = 1;
  const auto one = parse_config(doc, ov);
  ov.seed = 6;
  const auto six = parse_config(doc, ov);
  ASSERT_TRUE(one.cost.reach);
  EXPECT_EQ(one.cost.reach->target, six.cost.reach->target);
  EXPECT_DOUBLE_EQ(one.cost.reach->target.x(), 2.0);
  EXPECT_DOUBLE_EQ(one.cost.reach->target.y(), 0.5);
}

TEST(Config, ReadsFilesWithComments) {
  const fs::path dir = fs::path(ALSPG_TEST_SCRATCH);
  fs::create_directories(dir);
  const fs::path file = dir / "commented.json";
  std::ofstream(file) << "// leading comment\n" << ik_document().dump(2) << "\n";
  EXPECT_EQ(load_config(file).seed, 3u);
  EXPECT_THROW(load_config(dir / "missing.json"), std::runtime_error);
  // An unreadable file is an I/O failure, not a schema error.
  try {
    load_config(dir / "missing.json");
  } catch (const ConfigError &) {
    ADD_FAILURE() << "missing file reported as a schema error";
  } catch (const std::runtime_error &) {
  }
}

TEST(JsonUtil, VectorsWithInfinity) {
  const Vector v = as_vector(json::parse("[1, null, -2]"), "/v", kInf);
  EXPECT_TRUE(std::isinf(v[1]));
  EXPECT_THROW(as_vector(json::parse("[1, null]"), "/v"), ConfigError);
  EXPECT_EQ(to_json(v).dump(), "[1.0,null,-2.0]");
  EXPECT_THROW(as_matrix(json::parse("[[1, 2], [3]]"), "/m"), ConfigError);
}

TEST(SetJson, RoundTripPreservesProjections) {
  oracle::Rng rng(61);
  for (std::string_view variant : oracle::kSetVariants) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto sc = oracle::random_set(variant, rng);
      const json descriptor = set_to_json(sc.set);
      const ProjectionSet back = set_from_json(descriptor);
      EXPECT_EQ(set_to_json(back), descriptor) << variant;
      for (int k = 0; k < 5; ++k) {
        const Vector x = oracle::normal_vector(rng, sc.dim, 2.0);
        EXPECT_LE((project(sc.set, x) - project(back, x)).lpNorm<Eigen::Infinity>(), 1e-12) << variant;
      }
    }
  }
}

TEST(SetJson, ConvenienceTypes) {
  const auto ball = set_from_json(json::parse(R"({"type": "ball", "center": [0, 0], "radius": 2})"));
  EXPECT_TRUE(contains(ball, (Vector(2) << 1.2, 1.5).finished()));
  EXPECT_FALSE(contains(ball, (Vector(2) << 1.5, 1.5).finished()));
  const auto rect = set_from_json(
      json::parse(R"({"type": "rectangle", "center": [1, 0], "length": 0.4, "width": 0.2, "angle": 0, "inside": false})"));
  EXPECT_FALSE(contains(rect, (Vector(2) << 1.0, 0.0).finished()));
  EXPECT_TRUE(contains(rect, (Vector(2) << 1.3, 0.0).finished()));
  try {
    set_from_json(json::parse(R"({"type": "product", "parts": [{"set": {"type": "box"}, "dim": 2}]})"), "/s");
    FAIL();
  } catch (const ConfigError &e) {
    EXPECT_EQ(e.path().rfind("/s/parts/0/set", 0), 0u) << e.path();
  }
  EXPECT_THROW(set_from_json(json::parse(R"({"type": "torus"})")), ConfigError);
}

}  // namespace
}  // namespace alspg::bench
