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
#include "alspg/alspg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alspg {

ConstraintBlock::ConstraintBlock(std::string name_, VectorMap map_, ProjectionSet set_)
    : name(std::move(name_)),
      map(std::move(map_)),
      set(std::move(set_)),
      lambda(Vector::Zero(map.output_dim)) {
  if (const auto d = ambient_dim(set)) require_dim(*d, map.output_dim, "ConstraintBlock set");
}

void NlpProblem::validate() const {
  if (!objective.value || !objective.gradient) {
    throw std::invalid_argument("NlpProblem: objective callbacks missing");
  }
  if (const auto d = ambient_dim(domain)) require_dim(*d, dim, "NlpProblem domain");
  for (const auto &block : constraints) {
    if (!block.map.value || !block.map.vjp) {
      throw std::invalid_argument("NlpProblem: constraint '" + block.name + "' lacks callbacks");
    }
    require_dim(block.lambda.size(), block.map.output_dim, "ConstraintBlock lambda");
    if (!(block.rho > 0.0)) throw std::invalid_argument("ConstraintBlock: rho must be positive");
  }
}

void AlspgOptions::validate() const {
  if (!(epsilon_outer > 0.0)) throw std::invalid_argument("AlspgOptions: epsilon_outer > 0");
  if (!(rho0 > 0.0)) throw std::invalid_argument("AlspgOptions: rho0 > 0");
  if (!(rho_growth > 1.0)) throw std::invalid_argument("AlspgOptions: rho_growth > 1");
  if (!(rho_max >= rho0)) throw std::invalid_argument("AlspgOptions: rho_max >= rho0");
  if (!(lambda_max > 0.0)) throw std::invalid_argument("AlspgOptions: lambda_max > 0");
  if (max_outer < 1) throw std::invalid_argument("AlspgOptions: max_outer >= 1");
  inner.validate();
}

namespace {

// w - P(w) for the shifted constraint value w = g + lambda / rho.
Vector shifted_violation(const ConstraintBlock &block, const Vector &g) {
  const Vector w = g + block.lambda / block.rho;
  return w - project(block.set, w);
}

}  // namespace

double al_value(const NlpProblem &problem, const Vector &x) {
  double total = problem.objective.value(x);
  if (!std::isfinite(total)) return total;
  for (const auto &block : problem.constraints) {
    const Vector g = block.map.value(x);
    total += 0.5 * block.rho * shifted_violation(block, g).squaredNorm();
  }
  return total;
}

Vector al_gradient(const NlpProblem &problem, const Vector &x) {
  Vector grad = problem.objective.gradient(x);
  for (const auto &block : problem.constraints) {
    const Vector g = block.map.value(x);
    const Vector r = shifted_violation(block, g);
    if (r.squaredNorm() == 0.0) continue;
    grad += block.map.vjp(x, block.rho * r);
  }
  return grad;
}

double auxiliary_v(const ConstraintBlock &block, const Vector &x) {
  const Vector g = block.map.value(x);
  return (g - project(block.set, Vector(g + block.lambda / block.rho))).norm();
}

double constraint_residual(const ConstraintBlock &block, const Vector &x) {
  const Vector g = block.map.value(x);
  return (g - project(block.set, g)).lpNorm<Eigen::Infinity>();
}

AlspgResult alspg_solve(NlpProblem &problem, const Vector &x0, const AlspgOptions &opts) {
  opts.validate();
  problem.validate();
  require_dim(x0.size(), problem.dim, "alspg_solve x0");
  const auto t_start = Clock::now();

  AlspgResult result;
  SolveReport &rep = result.report;

  for (auto &block : problem.constraints) {
    if (!opts.warm_start_multipliers) {
      block.lambda.setZero(block.map.output_dim);
      block.rho = opts.rho0;
    }
  }

  const bool counts_jacobian = problem.objective_uses_jacobian || !problem.constraints.empty();
  SmoothFunction merit{
      [&problem](const Vector &x) { return al_value(problem, x); },
      [&problem, &rep, counts_jacobian](const Vector &x) {
        if (counts_jacobian) ++rep.n_jac;
        return al_gradient(problem, x);
      },
  };

  Vector x = contains(problem.domain, x0, 0.0) ? x0 : project(problem.domain, x0);

  // Constraint values at the current outer iterate, reused for V(x_k, ...).
  std::vector<Vector> g_prev;
  auto record = [&](const Vector &xk, const std::vector<Vector> &g_values) {
    std::vector<double> residuals;
    residuals.reserve(problem.constraints.size());
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
      const auto &block = problem.constraints[i];
      residuals.push_back((g_values[i] - project(block.set, g_values[i])).lpNorm<Eigen::Infinity>());
    }
    if (opts.record_iterates) rep.x_trace.push_back(xk);
    rep.f_trace.push_back(problem.objective.value(xk));
    rep.residual_trace.push_back(std::move(residuals));
  };
  auto evaluate_constraints = [&](const Vector &xk) {
    std::vector<Vector> values;
    values.reserve(problem.constraints.size());
    for (const auto &block : problem.constraints) values.push_back(block.map.value(xk));
    if (!values.empty()) ++rep.n_f;
    return values;
  };

  auto finish = [&](Termination term, std::string msg = {}) {
    result.x = x;
    rep.termination = term;
    rep.message = std::move(msg);
    rep.wall_time = std::chrono::duration<double>(Clock::now() - t_start).count();
    return result;
  };

  g_prev = evaluate_constraints(x);
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    auto &block = problem.constraints[i];
    block.v_prev = (g_prev[i] - project(block.set, Vector(g_prev[i] + block.lambda / block.rho))).norm();
  }
  record(x, g_prev);

  double inner_eps = problem.constraints.empty()
                         ? opts.inner.epsilon
                         : std::max(opts.inner.epsilon, opts.inner_epsilon_start);
  std::optional<double> gamma = opts.initial_gamma;

  for (int k = 0; k < opts.max_outer; ++k) {
    SpgOptions inner = opts.inner;
    inner.epsilon = inner_eps;
    inner.initial_gamma = gamma;
    inner.record_iterates = false;
    if (opts.deadline && (!inner.deadline || *opts.deadline < *inner.deadline)) {
      inner.deadline = opts.deadline;
    }

    SpgResult sub = spg_minimize(merit, problem.domain, x, inner);
    rep.n_f += sub.report.n_f;
    rep.n_grad += sub.report.n_grad;
    rep.iterations += sub.report.iterations;
    ++result.outer_iterations;
    x = sub.x;
    gamma = sub.gamma;
    result.gamma = sub.gamma;
    if (sub.report.termination == Termination::CallbackFailure) {
      return finish(Termination::CallbackFailure, "inner solve: " + sub.report.message);
    }

    const std::vector<Vector> g_now = evaluate_constraints(x);
    bool feasible = true;
    bool stalled = false;
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
      auto &block = problem.constraints[i];
      const Vector &g = g_now[i];
      const Vector &gp = g_prev[i];
      if (!g.allFinite()) return finish(Termination::CallbackFailure, "non-finite constraint value");

      const double v_old =
          (gp - project(block.set, Vector(gp + block.lambda / block.rho))).norm();
      const Vector w = g + block.lambda / block.rho;
      block.lambda = (block.rho * (w - project(block.set, w)))
                         .cwiseMax(-opts.lambda_max)
                         .cwiseMin(opts.lambda_max);
      const double v_new =
          (g - project(block.set, Vector(g + block.lambda / block.rho))).norm();
      const double residual = (g - project(block.set, g)).lpNorm<Eigen::Infinity>();
      if (v_new > v_old) {
        if (block.rho * opts.rho_growth <= opts.rho_max * (1.0 + 1e-12)) {
          block.rho *= opts.rho_growth;
        } else if (residual > opts.epsilon_outer) {
          stalled = true;
        }
      }
      block.v_prev = v_new;
      feasible = feasible && residual <= opts.epsilon_outer;
    }
    g_prev = g_now;
    record(x, g_now);

    const bool inner_done =
        sub.report.termination == Termination::Converged && inner_eps <= opts.inner.epsilon;
    if (feasible && inner_done) return finish(Termination::Converged);
    if (sub.report.termination == Termination::TimeLimit ||
        (opts.deadline && Clock::now() >= *opts.deadline)) {
      return finish(Termination::TimeLimit);
    }
    if (stalled) return finish(Termination::Stagnation, "penalty at rho_max without progress");
    inner_eps = std::max(opts.inner.epsilon, inner_eps * opts.inner_epsilon_decay);
  }
  return finish(Termination::MaxIters);
}

VectorMap reduce_inequalities(std::vector<ScalarInequality> inequalities, Index input_dim) {
  auto shared = std::make_shared<const std::vector<ScalarInequality>>(std::move(inequalities));
  VectorMap map;
  map.output_dim = 1;
  map.value = [shared](const Vector &x) {
    double h = 0.0;
    for (const auto &g : *shared) h += std::max(0.0, g.value(x));
    return Vector::Constant(1, h);
  };
  map.vjp = [shared, input_dim](const Vector &x, const Vector &y) {
    Vector out = Vector::Zero(input_dim);
    for (const auto &g : *shared) {
      if (g.value(x) > 0.0) out += y[0] * g.gradient(x);
    }
    return out;
  };
  return map;
}

}  // namespace alspg
