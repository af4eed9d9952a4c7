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
#include "alspg/geomproj.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace alspg {

/// Discrete-time dynamics x_{t+1} = f(x_t, u_t). Implementations must be pure.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;
  virtual Index state_dim() const = 0;
  virtual Index control_dim() const = 0;
  virtual double dt() const = 0;
  virtual Vector step(const Vector &x, const Vector &u) const = 0;
  /// a = df/dx, b = df/du at (x, u).
  virtual void jacobians(const Vector &x, const Vector &u, Matrix &a, Matrix &b) const = 0;
};

/// x_{t+1} = A x_t + B u_t.
class LinearModel final : public DynamicsModel {
 public:
  LinearModel(Matrix a, Matrix b, double dt = 1.0);
  Index state_dim() const override { return a_.rows(); }
  Index control_dim() const override { return b_.cols(); }
  double dt() const override { return dt_; }
  Vector step(const Vector &x, const Vector &u) const override;
  void jacobians(const Vector &x, const Vector &u, Matrix &a, Matrix &b) const override;
  const Matrix &a() const { return a_; }
  const Matrix &b() const { return b_; }

 private:
  Matrix a_, b_;
  double dt_;
};

/// Stacked trajectory in time-major layout: states holds x_1..x_T, controls
/// holds u_0..u_{T-1}.
struct Trajectory {
  Vector x0;
  Vector states;
  Vector controls;
  Index horizon = 0;
  Index state_dim = 0;
  Index control_dim = 0;

  /// x_t for t in [0, T]; t = 0 is the initial state.
  Eigen::VectorBlock<const Vector> state(Index t) const;
  Eigen::VectorBlock<const Vector> control(Index t) const;
};

struct LinearizedDynamics {
  std::vector<Matrix> a;  // A_t = df/dx at (x_t, u_t), t = 0..T-1
  std::vector<Matrix> b;  // B_t = df/du at (x_t, u_t)
};

/// Forward simulation. Throws std::runtime_error naming the first timestep
/// that produced a non-finite state.
Trajectory rollout(const DynamicsModel &model, const Vector &x0, const Vector &controls);

LinearizedDynamics linearize(const DynamicsModel &model, const Trajectory &traj);

/// z = (dF/du)^T y for the rollout map F, via the backward recursion
/// zbar_{T-1} = y_{T-1}, zbar_t = y_t + A_{t+1}^T zbar_{t+1}, z_t = B_t^T zbar_t.
/// y is stacked like Trajectory::states, z like Trajectory::controls.
Vector jac_transpose_vec(const LinearizedDynamics &lin, const Vector &y, Index horizon,
                         Index state_dim, Index control_dim);

/// A cost on x_t at the listed timesteps (1..T), with gradient and a
/// (possibly Gauss-Newton) Hessian for second-order baselines.
struct StateTerm {
  std::vector<Index> timesteps;
  std::function<double(const Vector &)> value;
  std::function<Vector(const Vector &)> gradient;
  std::function<Matrix(const Vector &)> hessian;
};

/// (x - ref)^T Q (x - ref).
StateTerm quadratic_state_term(Matrix weight, Vector reference, std::vector<Index> timesteps);

/// Separable cost sum_k phi_k(x_t) + sum_t u_t^T R u_t.
class OcCost {
 public:
  OcCost() = default;
  explicit OcCost(Matrix control_weight);

  void add_state_term(StateTerm term) { state_terms_.push_back(std::move(term)); }
  void set_control_weight(Matrix r) { control_weight_ = std::move(r); }
  const Matrix &control_weight() const { return control_weight_; }
  const std::vector<StateTerm> &state_terms() const { return state_terms_; }

  double value(const Trajectory &traj) const;
  /// Gradients with respect to the stacked states and controls.
  void gradient(const Trajectory &traj, Vector &grad_states, Vector &grad_controls) const;
  /// Adds the state-cost expansion at x_t (t in 1..T).
  void add_state_expansion(Index t, const Vector &x, Vector &lx, Matrix &lxx) const;
  void add_control_expansion(const Vector &u, Vector &lu, Matrix &luu) const;

 private:
  std::vector<StateTerm> state_terms_;
  Matrix control_weight_;
};

/// Picks state coordinates at a set of timesteps (1..T).
struct StateSelector {
  std::vector<Index> indices;
  std::vector<Index> timesteps;

  static StateSelector all_steps(std::vector<Index> indices, Index horizon);
};

/// Each selected slice x_t[indices] must lie in `set`.
struct StateConstraint {
  std::string name;
  StateSelector selector;
  ProjectionSet set;
};

/// A map h(x, u) of the whole trajectory constrained to h in `set`; without a
/// set it is the equality h(x, u) = 0. vjp accumulates into the state and
/// control gradients.
struct TrajectoryMap {
  std::string name;
  Index output_dim = 1;
  std::optional<ProjectionSet> set;
  std::function<Vector(const Trajectory &)> value;
  std::function<void(const Trajectory &, const Vector &w, Vector &grad_states,
                     Vector &grad_controls)>
      vjp;
};

/// Direct-shooting problem over the stacked controls. Holds a rollout and
/// linearization cache keyed on the exact control vector; confine an instance
/// to one solve at a time.
class OcProblem {
 public:
  NlpProblem &nlp() { return nlp_; }
  const NlpProblem &nlp() const { return nlp_; }
  Trajectory trajectory(const Vector &controls) const;
  Index horizon() const;
  Index state_dim() const;
  Index control_dim() const;
  const OcCost &cost() const;
  const DynamicsModel &model() const;
  const Vector &x0() const;
  long rollouts() const;
  long linearizations() const;

 private:
  friend OcProblem build_oc_problem(std::shared_ptr<const DynamicsModel>, Vector, OcCost,
                                    ProjectionSet, std::vector<StateConstraint>,
                                    std::vector<TrajectoryMap>, Index);
  struct Impl;
  std::shared_ptr<Impl> impl_;
  NlpProblem nlp_;
};

/// Assembles min_{u in control_set} c(F(x0, u), u) s.t. F(x0, u) slices in
/// their sets and h(F(x0, u), u) in its set for each extra map.
OcProblem build_oc_problem(std::shared_ptr<const DynamicsModel> model, Vector x0, OcCost cost,
                           ProjectionSet control_set, std::vector<StateConstraint> state_constraints,
                           std::vector<TrajectoryMap> extra_maps, Index horizon);

}  // namespace alspg
