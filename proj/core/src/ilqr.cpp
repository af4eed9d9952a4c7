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
#include "alspg/ilqr.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>

namespace alspg {

namespace {

struct BackwardPass {
  std::vector<Vector> k;
  std::vector<Matrix> K;
  // First-order predicted change of the cost for a full step.
  double d1 = 0.0;
};

bool backward_pass(const Trajectory &traj, const LinearizedDynamics &lin, const OcCost &cost,
                   const IlqrOptions &opts, BackwardPass &out) {
  const Index T = traj.horizon;
  const Index m = traj.state_dim;
  const Index n = traj.control_dim;
  out.k.assign(static_cast<std::size_t>(T), Vector());
  out.K.assign(static_cast<std::size_t>(T), Matrix());
  out.d1 = 0.0;

  Vector vx = Vector::Zero(m);
  Matrix vxx = Matrix::Zero(m, m);
  cost.add_state_expansion(T, traj.state(T), vx, vxx);

  for (Index t = T - 1; t >= 0; --t) {
    const auto idx = static_cast<std::size_t>(t);
    const Matrix &a = lin.a[idx];
    const Matrix &b = lin.b[idx];
    Vector lx = Vector::Zero(m);
    Matrix lxx = Matrix::Zero(m, m);
    if (t > 0) cost.add_state_expansion(t, traj.state(t), lx, lxx);
    Vector lu = Vector::Zero(n);
    Matrix luu = Matrix::Zero(n, n);
    cost.add_control_expansion(traj.control(t), lu, luu);

    const Vector qx = lx + a.transpose() * vx;
    const Vector qu = lu + b.transpose() * vx;
    const Matrix vxx_a = vxx * a;
    const Matrix qxx = lxx + a.transpose() * vxx_a;
    const Matrix qux = b.transpose() * vxx_a;
    Matrix quu = luu + b.transpose() * vxx * b;
    quu = 0.5 * (quu + quu.transpose());

    Eigen::LLT<Matrix> llt(quu);
    double reg = opts.reg_init;
    while (llt.info() != Eigen::Success) {
      if (reg > opts.reg_max) return false;
      llt.compute(quu + reg * Matrix::Identity(n, n));
      reg *= opts.reg_growth;
    }
    Vector k = -llt.solve(qu);
    Matrix K = -llt.solve(qux);

    out.d1 += k.dot(qu);

    vx = qx + K.transpose() * quu * k + K.transpose() * qu + qux.transpose() * k;
    vxx = qxx + K.transpose() * quu * K + K.transpose() * qux + qux.transpose() * K;
    vxx = 0.5 * (vxx + vxx.transpose());
    out.k[idx] = std::move(k);
    out.K[idx] = std::move(K);
  }
  return true;
}

}  // namespace

IlqrResult ilqr_solve(const DynamicsModel &model, const Vector &x0, const OcCost &cost,
                      const Vector &u_init, const IlqrOptions &opts) {
  if (opts.max_iters < 1) throw std::invalid_argument("IlqrOptions: max_iters >= 1");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("IlqrOptions: tol > 0");
  if (!(opts.backtrack > 0.0 && opts.backtrack < 1.0)) {
    throw std::invalid_argument("IlqrOptions: backtrack in (0, 1)");
  }
  if (!(opts.alpha_min > 0.0)) throw std::invalid_argument("IlqrOptions: alpha_min > 0");
  if (!(opts.reg_init > 0.0 && opts.reg_growth > 1.0)) {
    throw std::invalid_argument("IlqrOptions: regularization parameters");
  }
  const auto t_start = Clock::now();

  IlqrResult result;
  SolveReport &rep = result.report;
  auto finish = [&](Termination term, std::string msg = {}) {
    rep.termination = term;
    rep.message = std::move(msg);
    rep.wall_time = std::chrono::duration<double>(Clock::now() - t_start).count();
    return result;
  };

  try {
    result.trajectory = rollout(model, x0, u_init);
  } catch (const std::runtime_error &e) {
    result.trajectory.x0 = x0;
    result.trajectory.controls = u_init;
    result.cost = kInf;
    return finish(Termination::CallbackFailure, e.what());
  }
  result.cost = cost.value(result.trajectory);
  ++rep.n_f;
  if (!std::isfinite(result.cost)) return finish(Termination::CallbackFailure, "non-finite cost");
  rep.f_trace.push_back(result.cost);
  if (opts.record_iterates) rep.x_trace.push_back(result.trajectory.controls);

  const Index T = result.trajectory.horizon;
  const Index n = model.control_dim();

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    if (opts.deadline && Clock::now() >= *opts.deadline) return finish(Termination::TimeLimit);
    const Trajectory &traj = result.trajectory;
    const LinearizedDynamics lin = linearize(model, traj);
    ++rep.n_jac;
    ++rep.n_grad;

    BackwardPass bp;
    if (!backward_pass(traj, lin, cost, opts, bp)) {
      return finish(Termination::Stagnation, "control Hessian not regularizable");
    }
    const double scale = std::max(1.0, std::abs(result.cost));

    bool accepted = false;
    for (double alpha = 1.0; alpha >= opts.alpha_min; alpha *= opts.backtrack) {
      Trajectory cand;
      cand.x0 = x0;
      cand.horizon = T;
      cand.state_dim = traj.state_dim;
      cand.control_dim = n;
      cand.controls.resize(T * n);
      cand.states.resize(T * traj.state_dim);
      Vector x = x0;
      bool finite = true;
      for (Index t = 0; t < T; ++t) {
        const auto idx = static_cast<std::size_t>(t);
        const Vector dx = x - traj.state(t);
        cand.controls.segment(t * n, n) = traj.control(t) + alpha * bp.k[idx] + bp.K[idx] * dx;
        x = model.step(x, cand.controls.segment(t * n, n));
        if (!x.allFinite()) {
          finite = false;
          break;
        }
        cand.states.segment(t * traj.state_dim, traj.state_dim) = x;
      }
      if (!finite) continue;  // divergent rollout: shrink the step
      const double c_new = cost.value(cand);
      ++rep.n_f;
      if (std::isfinite(c_new) && c_new < result.cost) {
        const double decrease = result.cost - c_new;
        result.trajectory = std::move(cand);
        result.cost = c_new;
        accepted = true;
        rep.f_trace.push_back(c_new);
        if (opts.record_iterates) rep.x_trace.push_back(result.trajectory.controls);
        ++rep.iterations;
        if (decrease < opts.tol * scale) return finish(Termination::Converged);
        break;
      }
    }
    if (!accepted) {
      ++rep.iterations;
      // No step lowers the cost. At a stationary point the model predicts no
      // decrease either, which counts as convergence.
      if (-bp.d1 <= opts.tol * scale) return finish(Termination::Converged);
      return finish(Termination::Stagnation, "line search failed");
    }
  }
  return finish(Termination::MaxIters);
}

}  // namespace alspg
