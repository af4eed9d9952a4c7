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
#include "alspg/models/double_integrator.hpp"

#include <stdexcept>

namespace alspg::models {

DoubleIntegrator2D::DoubleIntegrator2D(double dt) : dt_(dt), a_(Matrix::Identity(4, 4)), b_(Matrix::Zero(4, 2)) {
  if (!(dt > 0.0)) throw std::invalid_argument("DoubleIntegrator2D: dt > 0");
  a_(0, 2) = dt;
  a_(1, 3) = dt;
  b_(0, 0) = 0.5 * dt * dt;
  b_(1, 1) = 0.5 * dt * dt;
  b_(2, 0) = dt;
  b_(3, 1) = dt;
}

Vector DoubleIntegrator2D::step(const Vector &x, const Vector &u) const { return a_ * x + b_ * u; }

void DoubleIntegrator2D::jacobians(const Vector &, const Vector &, Matrix &a, Matrix &b) const {
  a = a_;
  b = b_;
}

}  // namespace alspg::models
