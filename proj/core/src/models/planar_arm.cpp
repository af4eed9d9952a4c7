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
#include "alspg/models/planar_arm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alspg::models {

PlanarArm::PlanarArm() : PlanarArm(Vector::Ones(3)) {}

PlanarArm::PlanarArm(Vector link_lengths)
    : PlanarArm(link_lengths, Vector::Constant(link_lengths.size(), -std::numbers::pi),
                Vector::Constant(link_lengths.size(), std::numbers::pi)) {}

PlanarArm::PlanarArm(Vector link_lengths, Vector lower_limits, Vector upper_limits)
    : lengths_(std::move(link_lengths)), lower_(std::move(lower_limits)), upper_(std::move(upper_limits)) {
  if (lengths_.size() < 1) throw std::invalid_argument("PlanarArm: need at least one link");
  if ((lengths_.array() <= 0.0).any()) throw std::invalid_argument("PlanarArm: link lengths must be > 0");
  require_dim(lower_.size(), lengths_.size(), "PlanarArm lower limits");
  require_dim(upper_.size(), lengths_.size(), "PlanarArm upper limits");
  if ((lower_.array() > upper_.array()).any()) {
    throw std::invalid_argument("PlanarArm: lower limit above upper limit");
  }
}

Eigen::Vector2d PlanarArm::fk(const Vector &q) const {
  require_dim(q.size(), dof(), "PlanarArm::fk q");
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  double angle = 0.0;
  for (Index j = 0; j < dof(); ++j) {
    angle += q[j];
    p += lengths_[j] * Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }
  return p;
}

Matrix PlanarArm::jacobian(const Vector &q) const {
  require_dim(q.size(), dof(), "PlanarArm::jacobian q");
  const Index n = dof();
  Matrix jac = Matrix::Zero(2, n);
  double angle = 0.0;
  for (Index j = 0; j < n; ++j) {
    angle += q[j];
    const double cx = lengths_[j] * std::cos(angle);
    const double sy = lengths_[j] * std::sin(angle);
    // Link j moves with every joint i <= j.
    for (Index i = 0; i <= j; ++i) {
      jac(0, i) -= sy;
      jac(1, i) += cx;
    }
  }
  return jac;
}

Matrix PlanarArm::joint_positions(const Vector &q) const {
  require_dim(q.size(), dof(), "PlanarArm::joint_positions q");
  Matrix pts = Matrix::Zero(2, dof() + 1);
  double angle = 0.0;
  for (Index j = 0; j < dof(); ++j) {
    angle += q[j];
    pts.col(j + 1) = pts.col(j) + lengths_[j] * Eigen::Vector2d(std::cos(angle), std::sin(angle));
  }
  return pts;
}

ArmVelocityModel::ArmVelocityModel(Index dof, double dt) : dof_(dof), dt_(dt) {
  if (dof < 1) throw std::invalid_argument("ArmVelocityModel: dof >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("ArmVelocityModel: dt > 0");
}

Vector ArmVelocityModel::step(const Vector &x, const Vector &u) const { return x + dt_ * u; }

void ArmVelocityModel::jacobians(const Vector &, const Vector &, Matrix &a, Matrix &b) const {
  a = Matrix::Identity(dof_, dof_);
  b = dt_ * Matrix::Identity(dof_, dof_);
}

StateTerm arm_reach_term(const PlanarArm &arm, Eigen::Vector2d target, double weight,
                         std::vector<Index> timesteps) {
  StateTerm term;
  term.timesteps = std::move(timesteps);
  term.value = [arm, target, weight](const Vector &q) { return weight * (arm.fk(q) - target).squaredNorm(); };
  term.gradient = [arm, target, weight](const Vector &q) -> Vector {
    return 2.0 * weight * arm.jacobian(q).transpose() * (arm.fk(q) - target);
  };
  term.hessian = [arm, weight](const Vector &q) -> Matrix {
    const Matrix jac = arm.jacobian(q);
    return 2.0 * weight * jac.transpose() * jac;
  };
  return term;
}

TrajectoryMap arm_task_map(const PlanarArm &arm, std::vector<Index> timesteps, const ProjectionSet &set,
                           std::string name) {
  const auto steps = std::make_shared<const std::vector<Index>>(std::move(timesteps));
  const Index count = static_cast<Index>(steps->size());
  TrajectoryMap map;
  map.name = std::move(name);
  map.output_dim = 2 * count;
  map.set = ProjectionSet::repeated(set, 2, count);
  map.value = [arm, steps, count](const Trajectory &traj) {
    Vector out(2 * count);
    for (Index k = 0; k < count; ++k) out.segment<2>(2 * k) = arm.fk(traj.state((*steps)[static_cast<std::size_t>(k)]));
    return out;
  };
  map.vjp = [arm, steps, count](const Trajectory &traj, const Vector &w, Vector &gx, Vector &) {
    const Index m = traj.state_dim;
    for (Index k = 0; k < count; ++k) {
      const Index t = (*steps)[static_cast<std::size_t>(k)];
      gx.segment((t - 1) * m, m) += arm.jacobian(traj.state(t)).transpose() * w.segment<2>(2 * k);
    }
  };
  return map;
}

}  // namespace alspg::models
