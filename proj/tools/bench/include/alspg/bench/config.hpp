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
#pragma once

#include "alspg/alspg.hpp"
#include "alspg/bench/json_util.hpp"
#include "alspg/ilqr.hpp"
#include "alspg/models/obstacles.hpp"
#include "alspg/models/planar_arm.hpp"
#include "alspg/models/pusher_slider.hpp"
#include "alspg/spg.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace alspg::bench {

inline constexpr int kSchemaVersion = 1;

enum class ProblemKind { Ik, RobustIk, Planning, Mpc };
enum class SolverKind { Alspg, AlspgNoProj, Ilqr, Spg };

std::string to_string(ProblemKind k);
std::string to_string(SolverKind s);
SolverKind parse_solver(const std::string &name, const std::string &path = "/solver");

struct ModelSpec {
  /// planar_arm | arm_velocity | double_integrator | pusher_slider
  std::string name;
  Vector lengths;
  std::optional<Vector> lower;
  std::optional<Vector> upper;
  double dt = 0.05;
  models::PusherSliderParams pusher;
};

/// (x_t - goal)^T diag(weight) (x_t - goal).
struct QuadraticSpec {
  Vector weight;
  Vector goal;
};

/// Target on a circle: center + radius (cos(phase + rate k), sin(...)) at
/// closed-loop step k.
struct MovingTarget {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.0;
  double rate = 0.0;
  double phase = 0.0;
};

/// Squared end-effector distance to a target.
struct ReachSpec {
  Eigen::Vector2d target = Eigen::Vector2d::Zero();
  std::optional<MovingTarget> moving;
  double weight = 1.0;
  bool terminal_only = false;

  Eigen::Vector2d target_at(int step) const;
};

struct CostSpec {
  Vector control_weight;
  std::optional<QuadraticSpec> terminal;
  std::optional<QuadraticSpec> running;
  std::optional<ReachSpec> reach;
};

struct ConstraintSpec {
  enum class On { State, EndEffector };
  std::string name;
  On on = On::State;
  std::vector<Index> indices;
  /// Empty means every step 1..T.
  std::vector<Index> timesteps;
  ProjectionSet set = ProjectionSet::unbounded(1);
};

struct GoalTolerance {
  /// Bound on ||x_T[0:2] - goal[0:2]||.
  double position = 1e-2;
  /// Bound on |wrap(x_T[2] - goal[2])|, for models with a heading.
  std::optional<double> angle;
};

struct Disturbance {
  int step = 0;
  /// Added to the measured state after the plant step at `step`.
  Vector delta;
};

struct MpcSpec {
  int steps = 100;
  /// The plant clips controls to control_bounds.
  bool saturate = true;
  std::optional<Disturbance> disturbance;
  /// Tolerance for the per-step constraint residual of the measured state.
  double residual_tol = 1e-3;
};

struct ChanceSpec {
  Vector mu;
  Matrix sigma_sqrt;
  double eta = 0.8;
  int samples = 10000;
};

struct SolverOptions {
  AlspgOptions alspg;
  SpgOptions spg;
  IlqrOptions ilqr;
};

/// Validated experiment description. Built only through parse_config.
struct ProblemConfig {
  std::string name;
  ProblemKind kind = ProblemKind::Planning;
  SolverKind solver = SolverKind::Alspg;
  std::uint64_t seed = 0;
  ModelSpec model;
  Index horizon = 0;
  /// Initial state, or the initial configuration for ik kinds.
  Vector x0;
  CostSpec cost;
  Vector initial_control;
  std::optional<std::pair<Vector, Vector>> control_bounds;
  std::vector<ConstraintSpec> constraints;
  std::vector<models::RectObstacle> obstacles;
  double obstacle_margin = 0.0;
  std::optional<GoalTolerance> goal_tolerance;
  std::optional<MpcSpec> mpc;
  /// ik: end-effector target set; robust_ik: the chance constraint.
  std::optional<ProjectionSet> task_set;
  std::optional<ChanceSpec> chance;
  SolverOptions options;
  /// Canonical input document (after overrides), the digest source.
  json document;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> solver;
};

/// Validates a config document. Overrides replace the matching top-level
/// fields before validation.
ProblemConfig parse_config(json document, const Overrides &overrides = {});
ProblemConfig load_config(const std::filesystem::path &path, const Overrides &overrides = {});

json read_json_file(const std::filesystem::path &path);

/// The "model" object of a config.
ModelSpec parse_model_spec(const json &j, const std::string &path);

/// Arm of a planar_arm or arm_velocity model.
models::PlanarArm make_arm(const ModelSpec &model);

}  // namespace alspg::bench
