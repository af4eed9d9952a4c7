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

#include "alspg/shooting.hpp"

#include <cstdint>
#include <vector>

namespace alspg::models {

/// A rotated rectangle in the plane. `length` runs along the rotated x axis.
struct RectObstacle {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double length = 1.0;
  double width = 1.0;
  double angle = 0.0;

  /// Same pose with both sides grown by 2 * margin.
  RectObstacle inflated(double margin) const;
  /// Outside region as a projection set on positions.
  ProjectionSet outside_set() const;
  /// Depth of p inside the rectangle: min over the two axes of the distance
  /// to the nearer side; zero or negative outside.
  double depth(const Eigen::Vector2d &p) const;
  /// Gradient of depth() at a strictly interior p.
  Eigen::Vector2d depth_gradient(const Eigen::Vector2d &p) const;
};

struct ObstacleLayoutOptions {
  int count = 4;
  /// Centers are drawn along the start-goal segment, between these fractions
  /// of its length, and shifted sideways by at most `spread`.
  double along_min = 0.2;
  double along_max = 0.8;
  double spread = 0.15;
  double min_side = 0.1;
  double max_side = 0.3;
  /// Rejected if start or goal lies within this distance of an obstacle.
  double clearance = 0.15;
};

/// Seeded random layout of obstacles scattered around the straight path from
/// start to goal. Obstacles may overlap one another but never cover the start
/// or the goal.
std::vector<RectObstacle> random_obstacle_layout(std::uint64_t seed, const Eigen::Vector2d &start,
                                                 const Eigen::Vector2d &goal,
                                                 const ObstacleLayoutOptions &opts = {});

/// Positions x_t[0:2], t = 1..T, outside the obstacle, as a projected block.
StateConstraint obstacle_position_constraint(const RectObstacle &ob, Index horizon);

/// The same condition as one scalar equality: sum_t max(0, depth(p_t)) = 0.
TrajectoryMap obstacle_depth_map(const RectObstacle &ob, Index horizon);

}  // namespace alspg::models
