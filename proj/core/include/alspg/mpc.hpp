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
#include "alspg/ilqr.hpp"
#include "alspg/shooting.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace alspg {

enum class MpcSolver { Alspg, Ilqr };

/// Builds the horizon problem for closed-loop step `step` from the measured
/// state.
using MpcProblemBuilder = std::function<OcProblem(int step, const Vector &x)>;

/// Plant simulator: next measured state after applying u at state x.
using Plant = std::function<Vector(const Vector &x, const Vector &u, int step)>;

struct MpcOptions {
  int steps = 100;
  MpcSolver solver = MpcSolver::Alspg;
  AlspgOptions alspg;
  /// iLQR ignores constraint blocks and the control set: it solves the
  /// unconstrained horizon problem.
  IlqrOptions ilqr;
  /// Stop the loop once this holds for the measured state.
  std::function<bool(int step, const Vector &x)> goal_reached;
  /// Reuse the previous spectral stepsize for the next ALSPG solve.
  bool warm_gamma = true;
  /// Start each ALSPG solve from the previous multipliers, shifted like the
  /// controls when a block stacks one segment per horizon step. Penalties
  /// restart at rho0: carrying a grown penalty into the next problem makes
  /// its subproblems stiff from the first iteration.
  bool warm_multipliers = true;
};

struct MpcStepLog {
  int step = 0;
  Vector x;
  Vector u;
  double solve_time = 0.0;
  long n_f = 0;
  long n_jac = 0;
  int iterations = 0;
  /// Horizon cost of the returned plan.
  double objective = 0.0;
  /// Per constraint block, at the returned plan.
  std::vector<double> residuals;
  Termination termination = Termination::MaxIters;
  /// The solve failed and the previous control was applied again.
  bool held = false;
};

struct MpcLog {
  std::vector<MpcStepLog> steps;
  Vector final_state;
  bool goal_reached = false;
  long total_n_f = 0;
  long total_n_jac = 0;
  double total_time = 0.0;
};

/// Receding-horizon loop: solve, apply the first control to the plant, shift
/// the plan by one step (repeating the last control) as the next warm start.
/// Solver failures are logged and the previous control is held; the loop never
/// aborts early except on goal_reached.
MpcLog mpc_loop(const MpcProblemBuilder &build, const Plant &plant, const Vector &x_init,
                const Vector &u_init, const MpcOptions &opts);

/// Drops u_0 and repeats the last control.
Vector shift_controls(const Vector &controls, Index control_dim);

/// Shifts a multiplier vector by one horizon step when its length is a
/// multiple of the horizon; otherwise returns it unchanged.
Vector shift_multipliers(const Vector &lambda, Index horizon);

}  // namespace alspg
