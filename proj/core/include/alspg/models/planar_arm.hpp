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

#include "alspg/geomproj.hpp"
#include "alspg/shooting.hpp"

#include <vector>

namespace alspg::models {

/// Planar serial chain with revolute joints; joint i rotates link i relative
/// to link i-1.
class PlanarArm {
 public:
  /// Three unit links with joint limits +-pi.
  PlanarArm();
  explicit PlanarArm(Vector link_lengths);
  PlanarArm(Vector link_lengths, Vector lower_limits, Vector upper_limits);

  Index dof() const { return lengths_.size(); }
  const Vector &link_lengths() const { return lengths_; }
  const Vector &lower_limits() const { return lower_; }
  const Vector &upper_limits() const { return upper_; }
  ProjectionSet joint_limits() const { return ProjectionSet::bounds(lower_, upper_); }
  double reach() const { return lengths_.sum(); }

  Eigen::Vector2d fk(const Vector &q) const;
  /// 2 x N.
  Matrix jacobian(const Vector &q) const;
  /// Base, every joint and the end effector: 2 x (N + 1).
  Matrix joint_positions(const Vector &q) const;

 private:
  Vector lengths_;
  Vector lower_;
  Vector upper_;
};

/// q_{t+1} = q_t + dt * u_t: joint-velocity control of a PlanarArm.
class ArmVelocityModel final : public DynamicsModel {
 public:
  ArmVelocityModel(Index dof, double dt);
  Index state_dim() const override { return dof_; }
  Index control_dim() const override { return dof_; }
  double dt() const override { return dt_; }
  Vector step(const Vector &x, const Vector &u) const override;
  void jacobians(const Vector &x, const Vector &u, Matrix &a, Matrix &b) const override;

 private:
  Index dof_;
  double dt_;
};

/// weight * ||fk(q_t) - target||^2 at the listed timesteps, with the
/// Gauss-Newton Hessian 2 weight J^T J.
StateTerm arm_reach_term(const PlanarArm &arm, Eigen::Vector2d target, double weight,
                         std::vector<Index> timesteps);

/// End-effector positions of the trajectory at the listed timesteps, stacked,
/// constrained to lie in `set` (applied per timestep).
TrajectoryMap arm_task_map(const PlanarArm &arm, std::vector<Index> timesteps,
                           const ProjectionSet &set, std::string name = "ee_task");

}  // namespace alspg::models
