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

namespace alspg::models {

/// Point mass in the plane. State (px, py, vx, vy), control (ax, ay),
/// discretized exactly under a zero-order hold on the acceleration.
class DoubleIntegrator2D final : public DynamicsModel {
 public:
  explicit DoubleIntegrator2D(double dt = 0.05);
  Index state_dim() const override { return 4; }
  Index control_dim() const override { return 2; }
  double dt() const override { return dt_; }
  Vector step(const Vector &x, const Vector &u) const override;
  void jacobians(const Vector &x, const Vector &u, Matrix &a, Matrix &b) const override;

  const Matrix &a() const { return a_; }
  const Matrix &b() const { return b_; }

 private:
  double dt_;
  Matrix a_;
  Matrix b_;
};

}  // namespace alspg::models
