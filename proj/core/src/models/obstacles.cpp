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
#include "alspg/models/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace alspg::models {

namespace {

// Local coordinates of p in the obstacle frame.
Eigen::Vector2d local(const RectObstacle &ob, const Eigen::Vector2d &p) {
  return Eigen::Rotation2Dd(ob.angle).toRotationMatrix().transpose() * (p - ob.center);
}

}  // namespace

RectObstacle RectObstacle::inflated(double margin) const {
  RectObstacle out = *this;
  out.length += 2.0 * margin;
  out.width += 2.0 * margin;
  return out;
}

ProjectionSet RectObstacle::outside_set() const {
  return ProjectionSet::rectangle2d(center, length, width, angle, false);
}

double RectObstacle::depth(const Eigen::Vector2d &p) const {
  const Eigen::Vector2d l = local(*this, p);
  return std::min(0.5 * length - std::abs(l.x()), 0.5 * width - std::abs(l.y()));
}

Eigen::Vector2d RectObstacle::depth_gradient(const Eigen::Vector2d &p) const {
  const Eigen::Vector2d l = local(*this, p);
  const Eigen::Matrix2d rot = Eigen::Rotation2Dd(angle).toRotationMatrix();
  if (0.5 * length - std::abs(l.x()) <= 0.5 * width - std::abs(l.y())) {
    return -(l.x() >= 0.0 ? 1.0 : -1.0) * rot.col(0);
  }
  return -(l.y() >= 0.0 ? 1.0 : -1.0) * rot.col(1);
}

std::vector<RectObstacle> random_obstacle_layout(std::uint64_t seed, const Eigen::Vector2d &start,
                                                 const Eigen::Vector2d &goal,
                                                 const ObstacleLayoutOptions &opts) {
  if (opts.count < 0 || !(opts.min_side > 0.0) || opts.max_side < opts.min_side ||
      opts.along_max < opts.along_min || opts.spread < 0.0) {
    throw std::invalid_argument("random_obstacle_layout: bad options");
  }
  const Eigen::Vector2d dir = goal - start;
  if (!(dir.norm() > 0.0)) throw std::invalid_argument("random_obstacle_layout: start equals goal");
  const Eigen::Vector2d normal = Eigen::Vector2d(-dir.y(), dir.x()).normalized();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> along(opts.along_min, opts.along_max);
  std::uniform_real_distribution<double> offset(-opts.spread, opts.spread);
  std::uniform_real_distribution<double> side(opts.min_side, opts.max_side);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::vector<RectObstacle> out;
  for (int attempt = 0; static_cast<int>(out.size()) < opts.count; ++attempt) {
    if (attempt > 10000) throw std::runtime_error("random_obstacle_layout: arena too crowded");
    RectObstacle ob;
    ob.center = start + along(rng) * dir + offset(rng) * normal;
    ob.length = side(rng);
    ob.width = side(rng);
    ob.angle = angle(rng);
    const RectObstacle grown = ob.inflated(opts.clearance);
    if (grown.depth(start) > 0.0 || grown.depth(goal) > 0.0) continue;
    out.push_back(ob);
  }
  return out;
}

StateConstraint obstacle_position_constraint(const RectObstacle &ob, Index horizon) {
  return {"obstacle", StateSelector::all_steps({0, 1}, horizon), ob.outside_set()};
}

TrajectoryMap obstacle_depth_map(const RectObstacle &ob, Index horizon) {
  TrajectoryMap map;
  map.name = "obstacle_depth";
  map.output_dim = 1;
  map.value = [ob, horizon](const Trajectory &traj) {
    double sum = 0.0;
    for (Index t = 1; t <= horizon; ++t) sum += std::max(0.0, ob.depth(traj.state(t).head<2>()));
    return Vector::Constant(1, sum);
  };
  map.vjp = [ob, horizon](const Trajectory &traj, const Vector &w, Vector &grad_states, Vector &) {
    const Index n = traj.state_dim;
    for (Index t = 1; t <= horizon; ++t) {
      const Eigen::Vector2d p = traj.state(t).head<2>();
      if (ob.depth(p) > 0.0) grad_states.segment<2>((t - 1) * n) += w[0] * ob.depth_gradient(p);
    }
  };
  return map;
}

}  // namespace alspg::models
