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
#include "alspg/models/chance.hpp"
#include "alspg/models/planar_arm.hpp"

#include <optional>

namespace alspg::models {

/// End-effector position of the arm as a constraint map q -> fk(q).
VectorMap end_effector_map(const PlanarArm &arm);

/// min ||q - q0||^2 over the joint limits s.t. fk(q) in task_set and, when
/// given, extra_h(q) = 0.
AlspgResult constrained_ik(const PlanarArm &arm, const Vector &q0, const ProjectionSet &task_set,
                           const std::optional<VectorMap> &extra_h = std::nullopt,
                           const AlspgOptions &opts = {});

/// min ||q - q0||^2 over the joint limits s.t. P(a^T fk(q) <= 0) >= eta.
AlspgResult robust_ik(const PlanarArm &arm, const Vector &q0, const ChanceConstraintMap &chance,
                      const AlspgOptions &opts = {});

struct IkStepResult {
  Vector q;
  /// ||fk(q) - P(fk(q))||_inf against the set of this step.
  double residual = 0.0;
  /// The deadline cut the solve short.
  bool budget_exceeded = false;
  SolveReport report;
};

/// Solver state carried between reactive IK steps: the configuration, the
/// multiplier and penalty of the task constraint, and the spectral stepsize.
class IkSession {
 public:
  /// Inner solves default to the final tolerance; outer iterations are the
  /// budgeted resource.
  IkSession(PlanarArm arm, Vector q_init, AlspgOptions opts = default_options());

  static AlspgOptions default_options();

  const PlanarArm &arm() const { return arm_; }
  const Vector &q() const { return q_; }
  const Vector &lambda() const { return lambda_; }
  double rho() const { return rho_; }
  /// Drops the multiplier, penalty and stepsize memory.
  void reset_multipliers();

 private:
  friend IkStepResult closed_loop_ik_step(IkSession &, const ProjectionSet &, int,
                                          std::optional<Clock::time_point>);
  PlanarArm arm_;
  Vector q_;
  AlspgOptions opts_;
  Vector lambda_;
  double rho_;
  std::optional<double> gamma_;
  std::optional<std::size_t> set_kind_;
};

/// One reactive step: at most `step_budget` outer iterations of ALSPG from the
/// session's configuration toward `task_set`, reusing the stored multipliers.
/// Switching to a different kind of set resets the multipliers.
IkStepResult closed_loop_ik_step(IkSession &session, const ProjectionSet &task_set, int step_budget,
                                 std::optional<Clock::time_point> deadline = std::nullopt);

}  // namespace alspg::models
