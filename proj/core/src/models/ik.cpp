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
#include "alspg/models/ik.hpp"

#include <stdexcept>

namespace alspg::models {

namespace {

NlpProblem stay_close_problem(const PlanarArm &arm, const Vector &q0) {
  NlpProblem nlp;
  nlp.dim = arm.dof();
  nlp.domain = arm.joint_limits();
  nlp.objective.value = [q0](const Vector &q) { return (q - q0).squaredNorm(); };
  nlp.objective.gradient = [q0](const Vector &q) -> Vector { return 2.0 * (q - q0); };
  return nlp;
}

// Kind of a set for multiplier bookkeeping; a transformed set counts as its
// inner kind.
std::size_t set_kind(const ProjectionSet &set) {
  if (const auto *t = set.get_if<Transformed>()) return 100 + t->inner->variant().index();
  return set.variant().index();
}

}  // namespace

VectorMap end_effector_map(const PlanarArm &arm) {
  VectorMap map;
  map.output_dim = 2;
  map.value = [arm](const Vector &q) -> Vector { return arm.fk(q); };
  map.vjp = [arm](const Vector &q, const Vector &y) -> Vector { return arm.jacobian(q).transpose() * y; };
  return map;
}

AlspgResult constrained_ik(const PlanarArm &arm, const Vector &q0, const ProjectionSet &task_set,
                           const std::optional<VectorMap> &extra_h, const AlspgOptions &opts) {
  require_dim(q0.size(), arm.dof(), "constrained_ik q0");
  NlpProblem nlp = stay_close_problem(arm, q0);
  nlp.constraints.emplace_back("task", end_effector_map(arm), task_set);
  if (extra_h) {
    nlp.constraints.emplace_back("extra", *extra_h, ProjectionSet::point(Vector::Zero(extra_h->output_dim)));
  }
  return alspg_solve(nlp, q0, opts);
}

AlspgResult robust_ik(const PlanarArm &arm, const Vector &q0, const ChanceConstraintMap &chance,
                      const AlspgOptions &opts) {
  require_dim(q0.size(), arm.dof(), "robust_ik q0");
  require_dim(chance.input_dim(), 2, "robust_ik chance map input");
  NlpProblem nlp = stay_close_problem(arm, q0);
  const Matrix cj = chance.jacobian();
  VectorMap map;
  map.output_dim = chance.output_dim();
  map.value = [arm, chance](const Vector &q) { return chance.value(arm.fk(q)); };
  map.vjp = [arm, cj](const Vector &q, const Vector &y) -> Vector {
    return arm.jacobian(q).transpose() * (cj.transpose() * y);
  };
  nlp.constraints.emplace_back("chance", std::move(map), ProjectionSet::second_order_cone());
  return alspg_solve(nlp, q0, opts);
}

AlspgOptions IkSession::default_options() {
  AlspgOptions opts;
  opts.inner.epsilon = 1e-6;
  opts.inner_epsilon_start = opts.inner.epsilon;
  opts.record_iterates = false;
  return opts;
}

IkSession::IkSession(PlanarArm arm, Vector q_init, AlspgOptions opts)
    : arm_(std::move(arm)), q_(std::move(q_init)), opts_(std::move(opts)), lambda_(Vector::Zero(2)), rho_(opts_.rho0) {
  require_dim(q_.size(), arm_.dof(), "IkSession q_init");
  opts_.validate();
  if (!contains(arm_.joint_limits(), q_, 0.0)) q_ = project(arm_.joint_limits(), q_);
}

void IkSession::reset_multipliers() {
  lambda_.setZero(2);
  rho_ = opts_.rho0;
  gamma_.reset();
}

IkStepResult closed_loop_ik_step(IkSession &session, const ProjectionSet &task_set, int step_budget,
                                 std::optional<Clock::time_point> deadline) {
  if (step_budget < 1) throw std::invalid_argument("closed_loop_ik_step: step_budget must be >= 1");
  if (const auto d = ambient_dim(task_set)) require_dim(*d, 2, "closed_loop_ik_step task set");
  const std::size_t kind = set_kind(task_set);
  if (session.set_kind_ != kind) {
    session.reset_multipliers();
    session.set_kind_ = kind;
  }

  NlpProblem nlp = stay_close_problem(session.arm_, session.q_);
  nlp.constraints.emplace_back("task", end_effector_map(session.arm_), task_set);
  nlp.constraints.back().lambda = session.lambda_;
  nlp.constraints.back().rho = session.rho_;

  AlspgOptions opts = session.opts_;
  opts.max_outer = step_budget;
  opts.warm_start_multipliers = true;
  opts.initial_gamma = session.gamma_;
  if (deadline) opts.deadline = deadline;
  AlspgResult res = alspg_solve(nlp, session.q_, opts);

  session.q_ = res.x;
  session.lambda_ = nlp.constraints.back().lambda;
  session.rho_ = nlp.constraints.back().rho;
  session.gamma_ = res.gamma;

  IkStepResult out;
  out.q = res.x;
  out.residual = constraint_residual(nlp.constraints.back(), res.x);
  out.budget_exceeded = res.report.termination == Termination::TimeLimit;
  out.report = std::move(res.report);
  return out;
}

}  // namespace alspg::models
