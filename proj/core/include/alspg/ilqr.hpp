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

#include "alspg/report.hpp"
#include "alspg/shooting.hpp"

#include <optional>

namespace alspg {

struct IlqrOptions {
  int max_iters = 200;
  /// Stop when an accepted step lowers the cost by less than
  /// tol * max(1, |cost|).
  double tol = 1e-8;
  double backtrack = 0.5;
  double alpha_min = 1e-4;
  /// First regularization tried on the control Hessian when it is not
  /// positive definite; grows by reg_growth until the factorization succeeds.
  double reg_init = 1e-6;
  double reg_growth = 10.0;
  double reg_max = 1e10;
  bool record_iterates = false;
  std::optional<Clock::time_point> deadline;
};

struct IlqrResult {
  Trajectory trajectory;
  double cost = 0.0;
  SolveReport report;
};

/// Unconstrained iLQR: dynamic-programming backward pass on the linearized
/// dynamics and quadratized cost, followed by a backtracking forward rollout.
IlqrResult ilqr_solve(const DynamicsModel &model, const Vector &x0, const OcCost &cost,
                      const Vector &u_init, const IlqrOptions &opts = {});

}  // namespace alspg
