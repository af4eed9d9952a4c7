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
#include "alspg/report.hpp"
#include "alspg/spg.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace alspg {

/// Differentiable map x -> g(x) exposed through its value and its
/// vector-Jacobian product J_g(x)^T y.
struct VectorMap {
  Index output_dim = 0;
  std::function<Vector(const Vector &)> value;
  std::function<Vector(const Vector &x, const Vector &y)> vjp;
};

/// One constraint g(x) in C with its multiplier state.
struct ConstraintBlock {
  std::string name;
  VectorMap map;
  ProjectionSet set;
  Vector lambda;
  double rho = 0.1;
  double v_prev = 0.0;

  ConstraintBlock(std::string name, VectorMap map, ProjectionSet set);
};

struct NlpProblem {
  Index dim = 0;
  SmoothFunction objective;
  ProjectionSet domain = ProjectionSet::unbounded(0);
  std::vector<ConstraintBlock> constraints;
  /// Set when the objective gradient itself needs a linearization of the
  /// problem functions (direct-shooting problems), so every gradient call is
  /// counted as a Jacobian evaluation.
  bool objective_uses_jacobian = false;

  void validate() const;
};

struct AlspgOptions {
  double epsilon_outer = 1e-4;
  double rho0 = 0.1;
  double rho_growth = 10.0;
  double rho_max = 1e8;
  double lambda_max = 1e8;
  int max_outer = 50;
  /// Inner tolerance schedule: starts at inner_epsilon_start and shrinks by
  /// inner_epsilon_decay per outer iteration down to inner.epsilon.
  double inner_epsilon_start = 1e-2;
  double inner_epsilon_decay = 0.1;
  SpgOptions inner;
  /// Keep the multipliers and penalties stored in the problem instead of
  /// resetting them to (0, rho0).
  bool warm_start_multipliers = false;
  /// Warm start for the first inner solve's spectral stepsize.
  std::optional<double> initial_gamma;
  bool record_iterates = true;
  std::optional<Clock::time_point> deadline;

  void validate() const;
};

struct AlspgResult {
  Vector x;
  /// Spectral stepsize at exit, usable as AlspgOptions::initial_gamma.
  double gamma = 1.0;
  int outer_iterations = 0;
  SolveReport report;
};

/// f(x) + sum_i rho_i/2 ||w_i - P_i(w_i)||^2 with w_i = g_i(x) + lambda_i / rho_i.
double al_value(const NlpProblem &problem, const Vector &x);

/// grad f(x) + sum_i rho_i J_i^T (w_i - P_i(w_i)); projections are never
/// differentiated.
Vector al_gradient(const NlpProblem &problem, const Vector &x);

/// ||g(x) - P(g(x) + lambda / rho)||.
double auxiliary_v(const ConstraintBlock &block, const Vector &x);

/// ||g(x) - P(g(x))||_inf.
double constraint_residual(const ConstraintBlock &block, const Vector &x);

/// Augmented-Lagrangian outer loop with SPG subproblems over the domain. The
/// multipliers and penalties of `problem` are updated in place.
AlspgResult alspg_solve(NlpProblem &problem, const Vector &x0, const AlspgOptions &opts = {});

/// Scalar inequality g(x) <= 0 with its gradient.
struct ScalarInequality {
  std::function<double(const Vector &)> value;
  std::function<Vector(const Vector &)> gradient;
};

/// h(x) = sum_i max(0, g_i(x)) as a one-dimensional map. h(x) = 0 exactly when
/// every g_i(x) <= 0. The derivative uses the active set {i : g_i(x) > 0}.
VectorMap reduce_inequalities(std::vector<ScalarInequality> inequalities, Index input_dim);

}  // namespace alspg
