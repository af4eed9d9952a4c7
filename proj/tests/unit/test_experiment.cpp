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
#include "alspg/bench/experiment.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

namespace alspg::bench {
namespace {

namespace fs = std::filesystem;

const fs::path kConfigs = fs::path(ALSPG_SOURCE_DIR) / "configs";

json small_planning(const std::string &solver) {
  json j = json::parse(R"({
    "schema_version": 1, "name": "small", "kind": "planning", "seed": 1,
    "model": {"name": "double_integrator", "dt": 0.1}, "horizon": 20,
    "x0": [0, 0, 0, 0],
    "cost": {"control_weight": [0.001, 0.001], "terminal": {"weight": [1, 1, 1, 1], "goal": [1, 1, 0, 0]}},
    "obstacles": {"margin": 0.001,
                  "rectangles": [{"center": [0.5, 0.5], "length": 0.2, "width": 0.2, "angle": 0.3}]},
    "goal_tolerance": {"position": 0.05}
  })");
  j["solver"] = solver;
  return j;
}

TEST(Digest, KnownSha256Vectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Digest, IgnoresTimingAndKeyOrder) {
  json a = {{"b", 1}, {"a", {{"wall_time", 0.3}, {"solve_time", 2.0}, {"x", 1}}}, {"digest", "old"}};
  json b;
  b["a"]["x"] = 1;
  b["a"]["solve_time"] = 9.0;
  b["b"] = 1;
  EXPECT_EQ(record_digest(a), record_digest(b));
  b["b"] = 2;
  EXPECT_NE(record_digest(a), record_digest(b));
  const json stripped = strip_timing(a);
  EXPECT_FALSE(stripped.contains("digest"));
  EXPECT_FALSE(stripped["a"].contains("wall_time"));
  EXPECT_FALSE(stripped["a"].contains("solve_time"));
  EXPECT_TRUE(stripped["a"].contains("x"));
}

TEST(Experiment, IkRecordIsCompleteAndDeterministic) {
  const auto cfg = load_config(kConfigs / "ik" / "annulus.json");
  const RunOutcome first = run_experiment(cfg);
  const RunOutcome second = run_experiment(cfg);
  EXPECT_TRUE(first.success);
  const json &r = first.record;
  for (const char *key : {"name", "kind", "solver", "seed", "config_digest", "environment", "report", "traces",
                          "result", "success", "digest"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_EQ(r["digest"], record_digest(r));
  EXPECT_EQ(r["digest"], second.record["digest"]);
  EXPECT_EQ(r["config_digest"], config_digest(cfg));
  EXPECT_LE(r["result"]["task_residual"].get<double>(), 1e-4);
  EXPECT_EQ(r["traces"]["objective"].size(), r["traces"]["residual"].size());
}

TEST(Experiment, ProjectedObstacleTrajectoryIsCollisionFree) {
  const RunOutcome out = run_experiment(parse_config(small_planning("alspg")));
  const json &res = out.record["result"];
  EXPECT_EQ(out.record["report"]["termination"], "converged");
  EXPECT_TRUE(res["collision_free"].get<bool>());
  EXPECT_LE(res["max_penetration"].get<double>(), 1e-6);
  EXPECT_TRUE(res["goal"]["reached"].get<bool>());
  EXPECT_TRUE(out.success);
}

TEST(Experiment, DepthFormulationRunsToo) {
  const RunOutcome out = run_experiment(parse_config(small_planning("alspg_noproj")));
  EXPECT_EQ(out.record["solver"], "alspg_noproj");
  EXPECT_TRUE(out.record["result"].contains("max_penetration"));
  EXPECT_GT(out.record["report"]["n_jac"].get<long>(), 0);
}

TEST(Experiment, UnconstrainedBaselines) {
  json doc = small_planning("spg");
  doc.erase("obstacles");
  const RunOutcome spg = run_experiment(parse_config(doc));
  EXPECT_EQ(spg.record["report"]["n_jac"], spg.record["report"]["n_grad"]);
  doc["solver"] = "ilqr";
  const RunOutcome ilqr = run_experiment(parse_config(doc));
  EXPECT_EQ(ilqr.record["report"]["termination"], "converged");
  EXPECT_NEAR(spg.record["result"]["objective"].get<double>(), ilqr.record["result"]["objective"].get<double>(),
              1e-4);
}

TEST(Experiment, MpcRecordLogsEveryStep) {
  json doc = read_json_file(kConfigs / "mpc" / "arm_box_disturbance.json");
  doc["mpc"]["steps"] = 8;
  doc["mpc"]["disturbance"]["step"] = 3;
  const RunOutcome out = run_experiment(parse_config(doc));
  const json &steps = out.record["result"]["steps"];
  ASSERT_EQ(steps.size(), 8u);
  for (const auto &s : steps) {
    EXPECT_TRUE(s.contains("state_residual"));
    EXPECT_TRUE(s.contains("solve_time"));
    EXPECT_FALSE(s["held"].get<bool>());
  }
  EXPECT_EQ(out.record["result"]["disturbance_step"], 3);
}

TEST(Experiment, WritesJsonLines) {
  const fs::path dir = fs::path(ALSPG_TEST_SCRATCH) / "records";
  fs::create_directories(dir);
  write_records(dir / "r.jsonl", {json{{"a", 1}}, json{{"b", 2}}});
  std::ifstream in(dir / "r.jsonl");
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    EXPECT_TRUE(json::accept(line));
    ++n;
  }
  EXPECT_EQ(n, 2);
}

}  // namespace
}  // namespace alspg::bench
