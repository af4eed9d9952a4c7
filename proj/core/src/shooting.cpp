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
#include "alspg/shooting.hpp"

#include <algorithm>
#include <stdexcept>

namespace alspg {

LinearModel::LinearModel(Matrix a, Matrix b, double dt) : a_(std::move(a)), b_(std::move(b)), dt_(dt) {
  if (a_.rows() != a_.cols()) throw DimensionError("LinearModel: A must be square");
  require_dim(b_.rows(), a_.rows(), "LinearModel B rows");
}

Vector LinearModel::step(const Vector &x, const Vector &u) const { return a_ * x + b_ * u; }

void LinearModel::jacobians(const Vector &, const Vector &, Matrix &a, Matrix &b) const {
  a = a_;
  b = b_;
}

Eigen::VectorBlock<const Vector> Trajectory::state(Index t) const {
  if (t == 0) return x0.segment(0, state_dim);
  return states.segment((t - 1) * state_dim, state_dim);
}

Eigen::VectorBlock<const Vector> Trajectory::control(Index t) const {
  return controls.segment(t * control_dim, control_dim);
}

Trajectory rollout(const DynamicsModel &model, const Vector &x0, const Vector &controls) {
  const Index m = model.state_dim();
  const Index n = model.control_dim();
  require_dim(x0.size(), m, "rollout x0");
  if (n == 0 || controls.size() % n != 0) throw DimensionError("rollout: controls not a multiple of n");
  Trajectory traj;
  traj.x0 = x0;
  traj.controls = controls;
  traj.horizon = controls.size() / n;
  traj.state_dim = m;
  traj.control_dim = n;
  traj.states.resize(traj.horizon * m);
  Vector x = x0;
  for (Index t = 0; t < traj.horizon; ++t) {
    x = model.step(x, controls.segment(t * n, n));
    if (!x.allFinite()) {
      throw std::runtime_error("rollout: non-finite state at timestep " + std::to_string(t + 1));
    }
    traj.states.segment(t * m, m) = x;
  }
  return traj;
}

LinearizedDynamics linearize(const DynamicsModel &model, const Trajectory &traj) {
  LinearizedDynamics lin;
  lin.a.resize(static_cast<std::size_t>(traj.horizon));
  lin.b.resize(static_cast<std::size_t>(traj.horizon));
  for (Index t = 0; t < traj.horizon; ++t) {
    model.jacobians(traj.state(t), traj.control(t), lin.a[static_cast<std::size_t>(t)],
                    lin.b[static_cast<std::size_t>(t)]);
  }
  return lin;
}

Vector jac_transpose_vec(const LinearizedDynamics &lin, const Vector &y, Index horizon,
                         Index state_dim, Index control_dim) {
  require_dim(y.size(), horizon * state_dim, "jac_transpose_vec y");
  require_dim(static_cast<Index>(lin.a.size()), horizon, "jac_transpose_vec A sequence");
  require_dim(static_cast<Index>(lin.b.size()), horizon, "jac_transpose_vec B sequence");
  Vector z(horizon * control_dim);
  if (horizon == 0) return z;
  Vector zbar = y.segment((horizon - 1) * state_dim, state_dim);
  for (Index t = horizon - 1;; --t) {
    const auto &b = lin.b[static_cast<std::size_t>(t)];
    if (b.rows() != state_dim || b.cols() != control_dim) {
      throw DimensionError("jac_transpose_vec: B_t has wrong shape");
    }
    z.segment(t * control_dim, control_dim).noalias() = b.transpose() * zbar;
    if (t == 0) break;
    // zbar_{t-1} = y_{t-1} + A_t^T zbar_t
    Vector next = y.segment((t - 1) * state_dim, state_dim);
    next.noalias() += lin.a[static_cast<std::size_t>(t)].transpose() * zbar;
    zbar.swap(next);
  }
  return z;
}

StateTerm quadratic_state_term(Matrix weight, Vector reference, std::vector<Index> timesteps) {
  require_dim(weight.rows(), reference.size(), "quadratic_state_term");
  StateTerm term;
  term.timesteps = std::move(timesteps);
  term.value = [weight, reference](const Vector &x) {
    const Vector e = x - reference;
    return e.dot(weight * e);
  };
  term.gradient = [weight, reference](const Vector &x) -> Vector {
    return (weight + weight.transpose()) * (x - reference);
  };
  term.hessian = [weight](const Vector &) -> Matrix { return weight + weight.transpose(); };
  return term;
}

OcCost::OcCost(Matrix control_weight) : control_weight_(std::move(control_weight)) {}

double OcCost::value(const Trajectory &traj) const {
  double total = 0.0;
  for (const auto &term : state_terms_) {
    for (Index t : term.timesteps) total += term.value(traj.state(t));
  }
  if (control_weight_.size() > 0) {
    for (Index t = 0; t < traj.horizon; ++t) {
      const auto u = traj.control(t);
      total += u.dot(control_weight_ * u);
    }
  }
  return total;
}

void OcCost::gradient(const Trajectory &traj, Vector &grad_states, Vector &grad_controls) const {
  const Index m = traj.state_dim;
  const Index n = traj.control_dim;
  grad_states.setZero(traj.horizon * m);
  grad_controls.setZero(traj.horizon * n);
  for (const auto &term : state_terms_) {
    for (Index t : term.timesteps) {
      grad_states.segment((t - 1) * m, m) += term.gradient(traj.state(t));
    }
  }
  if (control_weight_.size() > 0) {
    const Matrix sym = control_weight_ + control_weight_.transpose();
    for (Index t = 0; t < traj.horizon; ++t) {
      grad_controls.segment(t * n, n).noalias() = sym * traj.control(t);
    }
  }
}

void OcCost::add_state_expansion(Index t, const Vector &x, Vector &lx, Matrix &lxx) const {
  for (const auto &term : state_terms_) {
    if (std::find(term.timesteps.begin(), term.timesteps.end(), t) == term.timesteps.end()) continue;
    lx += term.gradient(x);
    lxx += term.hessian(x);
  }
}

void OcCost::add_control_expansion(const Vector &u, Vector &lu, Matrix &luu) const {
  if (control_weight_.size() == 0) return;
  const Matrix sym = control_weight_ + control_weight_.transpose();
  lu += sym * u;
  luu += sym;
}

StateSelector StateSelector::all_steps(std::vector<Index> indices, Index horizon) {
  StateSelector s;
  s.indices = std::move(indices);
  for (Index t = 1; t <= horizon; ++t) s.timesteps.push_back(t);
  return s;
}

struct OcProblem::Impl {
  std::shared_ptr<const DynamicsModel> model;
  Vector x0;
  OcCost cost;
  Index horizon = 0;
  Index m = 0;
  Index n = 0;

  Vector cached_u;
  Trajectory traj;
  bool has_traj = false;
  LinearizedDynamics lin;
  bool has_lin = false;
  long rollouts = 0;
  long linearizations = 0;

  const Trajectory &at(const Vector &u) {
    if (!has_traj || cached_u.size() != u.size() || cached_u != u) {
      traj = rollout(*model, x0, u);
      cached_u = u;
      has_traj = true;
      has_lin = false;
      ++rollouts;
    }
    return traj;
  }

  const LinearizedDynamics &lin_at(const Vector &u) {
    at(u);
    if (!has_lin) {
      lin = linearize(*model, traj);
      has_lin = true;
      ++linearizations;
    }
    return lin;
  }

  Vector pullback(const Vector &u, const Vector &grad_states, const Vector &grad_controls) {
    Vector z = jac_transpose_vec(lin_at(u), grad_states, horizon, m, n);
    z += grad_controls;
    return z;
  }
};

Trajectory OcProblem::trajectory(const Vector &controls) const {
  return rollout(*impl_->model, impl_->x0, controls);
}
Index OcProblem::horizon() const { return impl_->horizon; }
Index OcProblem::state_dim() const { return impl_->m; }
Index OcProblem::control_dim() const { return impl_->n; }
const OcCost &OcProblem::cost() const { return impl_->cost; }
const DynamicsModel &OcProblem::model() const { return *impl_->model; }
const Vector &OcProblem::x0() const { return impl_->x0; }
long OcProblem::rollouts() const { return impl_->rollouts; }
long OcProblem::linearizations() const { return impl_->linearizations; }

OcProblem build_oc_problem(std::shared_ptr<const DynamicsModel> model, Vector x0, OcCost cost,
                           ProjectionSet control_set, std::vector<StateConstraint> state_constraints,
                           std::vector<TrajectoryMap> extra_maps, Index horizon) {
  if (!model) throw std::invalid_argument("build_oc_problem: null model");
  if (horizon < 1) throw std::invalid_argument("build_oc_problem: horizon must be >= 1");
  auto impl = std::make_shared<OcProblem::Impl>();
  impl->m = model->state_dim();
  impl->n = model->control_dim();
  require_dim(x0.size(), impl->m, "build_oc_problem x0");
  impl->model = std::move(model);
  impl->x0 = std::move(x0);
  impl->cost = std::move(cost);
  impl->horizon = horizon;

  const Index m = impl->m;
  const Index n = impl->n;

  OcProblem problem;
  NlpProblem &nlp = problem.nlp_;
  nlp.dim = horizon * n;
  nlp.domain = std::move(control_set);
  nlp.objective_uses_jacobian = true;
  nlp.objective.value = [impl](const Vector &u) {
    try {
      return impl->cost.value(impl->at(u));
    } catch (const std::runtime_error &) {
      // Diverged rollout: reject the trial point.
      return kInf;
    }
  };
  nlp.objective.gradient = [impl](const Vector &u) {
    Vector gx, gu;
    impl->cost.gradient(impl->at(u), gx, gu);
    return impl->pullback(u, gx, gu);
  };

  for (auto &sc : state_constraints) {
    for (Index i : sc.selector.indices) {
      if (i < 0 || i >= m) throw std::out_of_range("StateSelector: state index out of range");
    }
    for (Index t : sc.selector.timesteps) {
      if (t < 1 || t > horizon) throw std::out_of_range("StateSelector: timestep out of range");
    }
    const auto sel = std::make_shared<const StateSelector>(sc.selector);
    const Index k = static_cast<Index>(sel->indices.size());
    const Index slots = static_cast<Index>(sel->timesteps.size());

    VectorMap map;
    map.output_dim = k * slots;
    map.value = [impl, sel, k](const Vector &u) {
      const Trajectory &traj = impl->at(u);
      Vector out(k * static_cast<Index>(sel->timesteps.size()));
      Index pos = 0;
      for (Index t : sel->timesteps) {
        const auto xt = traj.state(t);
        for (Index i : sel->indices) out[pos++] = xt[i];
      }
      return out;
    };
    map.vjp = [impl, sel, m, n, horizon](const Vector &u, const Vector &y) {
      Vector gx = Vector::Zero(horizon * m);
      Index pos = 0;
      for (Index t : sel->timesteps) {
        for (Index i : sel->indices) gx[(t - 1) * m + i] += y[pos++];
      }
      return impl->pullback(u, gx, Vector::Zero(horizon * n));
    };
    nlp.constraints.emplace_back(sc.name, std::move(map),
                                 ProjectionSet::repeated(sc.set, k, slots));
  }

  for (auto &extra : extra_maps) {
    const auto h = std::make_shared<const TrajectoryMap>(std::move(extra));
    VectorMap map;
    map.output_dim = h->output_dim;
    map.value = [impl, h](const Vector &u) { return h->value(impl->at(u)); };
    map.vjp = [impl, h, m, n, horizon](const Vector &u, const Vector &w) {
      Vector gx = Vector::Zero(horizon * m);
      Vector gu = Vector::Zero(horizon * n);
      h->vjp(impl->at(u), w, gx, gu);
      return impl->pullback(u, gx, gu);
    };
    nlp.constraints.emplace_back(h->name, std::move(map),
                                 h->set ? *h->set : ProjectionSet::point(Vector::Zero(h->output_dim)));
  }

  problem.impl_ = std::move(impl);
  return problem;
}

}  // namespace alspg
