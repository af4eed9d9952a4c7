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
#include "alspg/mpc.hpp"

#include <stdexcept>

namespace alspg {

Vector shift_controls(const Vector &controls, Index control_dim) {
  const Index len = controls.size();
  if (control_dim < 1 || len % control_dim != 0) throw DimensionError("shift_controls: bad control layout");
  if (len == 0) return controls;
  Vector out(len);
  out.head(len - control_dim) = controls.tail(len - control_dim);
  out.tail(control_dim) = controls.tail(control_dim);
  return out;
}

Vector shift_multipliers(const Vector &lambda, Index horizon) {
  if (horizon < 1 || lambda.size() == 0 || lambda.size() % horizon != 0) return lambda;
  return shift_controls(lambda, lambda.size() / horizon);
}

MpcLog mpc_loop(const MpcProblemBuilder &build, const Plant &plant, const Vector &x_init, const Vector &u_init,
                const MpcOptions &opts) {
  if (!build || !plant) throw std::invalid_argument("mpc_loop: builder and plant are required");
  if (opts.steps < 1) throw std::invalid_argument("mpc_loop: steps >= 1");

  MpcLog log;
  Vector x = x_init;
  Vector warm = u_init;
  std::optional<Vector> last_applied;
  std::optional<double> gamma;
  std::vector<Vector> duals;

  for (int k = 0; k < opts.steps; ++k) {
    if (opts.goal_reached && opts.goal_reached(k, x)) {
      log.goal_reached = true;
      break;
    }
    OcProblem problem = build(k, x);
    const Index n = problem.control_dim();
    if (problem.horizon() < 2) throw std::invalid_argument("mpc_loop: horizon must be >= 2");
    require_dim(warm.size(), problem.horizon() * n, "mpc_loop warm start");

    MpcStepLog entry;
    entry.step = k;
    entry.x = x;
    Vector plan = warm;
    bool failed = false;
    const auto t0 = Clock::now();
    if (opts.solver == MpcSolver::Alspg) {
      AlspgOptions ao = opts.alspg;
      if (opts.warm_gamma) ao.initial_gamma = gamma;
      NlpProblem &nlp = problem.nlp();
      if (opts.warm_multipliers && duals.size() == nlp.constraints.size()) {
        bool fits = true;
        for (std::size_t i = 0; i < duals.size(); ++i) {
          fits = fits && duals[i].size() == nlp.constraints[i].map.output_dim;
        }
        if (fits) {
          for (std::size_t i = 0; i < duals.size(); ++i) {
            nlp.constraints[i].lambda = shift_multipliers(duals[i], problem.horizon());
            nlp.constraints[i].rho = ao.rho0;
          }
          ao.warm_start_multipliers = true;
        }
      }
      AlspgResult res = alspg_solve(nlp, warm, ao);
      entry.n_f = res.report.n_f;
      entry.n_jac = res.report.n_jac;
      entry.iterations = res.report.iterations;
      entry.termination = res.report.termination;
      failed = res.report.termination == Termination::CallbackFailure;
      if (!failed) {
        plan = res.x;
        gamma = res.gamma;
        duals.clear();
        for (const auto &block : nlp.constraints) duals.push_back(block.lambda);
      }
    } else {
      IlqrResult res = ilqr_solve(problem.model(), problem.x0(), problem.cost(), warm, opts.ilqr);
      entry.n_f = res.report.n_f;
      entry.n_jac = res.report.n_jac;
      entry.iterations = res.report.iterations;
      entry.termination = res.report.termination;
      failed = res.report.termination == Termination::CallbackFailure;
      if (!failed) plan = res.trajectory.controls;
    }
    entry.solve_time = std::chrono::duration<double>(Clock::now() - t0).count();

    if (!failed) {
      const NlpProblem &nlp = problem.nlp();
      entry.objective = nlp.objective.value(plan);
      for (const auto &block : nlp.constraints) entry.residuals.push_back(constraint_residual(block, plan));
      entry.u = plan.head(n);
      warm = shift_controls(plan, n);
    } else {
      entry.held = true;
      entry.objective = kInf;
      entry.u = last_applied ? *last_applied : Vector(Vector::Zero(n));
      warm = shift_controls(warm, n);
    }
    last_applied = entry.u;
    log.total_n_f += entry.n_f;
    log.total_n_jac += entry.n_jac;
    log.total_time += entry.solve_time;

    x = plant(x, entry.u, k);
    log.steps.push_back(std::move(entry));
  }
  if (!log.goal_reached && opts.goal_reached && opts.goal_reached(opts.steps, x)) log.goal_reached = true;
  log.final_state = x;
  return log;
}

}  // namespace alspg
