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
#include "alspg/models/double_integrator.hpp"

#include <gtest/gtest.h>

#include <memory>

namespace alspg {
namespace {

TEST(ShiftControls, DropsFirstAndRepeatsLast) {
  const Vector u = Vector::LinSpaced(6, 1.0, 6.0);
  EXPECT_EQ(shift_controls(u, 2), (Vector(6) << 3.0, 4.0, 5.0, 6.0, 5.0, 6.0).finished());
  EXPECT_THROW(shift_controls(u, 4), DimensionError);
}

struct PointMassScenario {
  std::shared_ptr<const models::DoubleIntegrator2D> model = std::make_shared<models::DoubleIntegrator2D>(0.1);
  Index horizon = 20;
  Vector goal = (Vector(4) << 1.0, 1.0, 0.0, 0.0).finished();

  MpcProblemBuilder builder() const {
    return [this](int, const Vector &x) {
      OcCost cost(Matrix::Identity(2, 2) * 1e-3);
      cost.add_state_term(quadratic_state_term(Matrix::Identity(4, 4), goal, {horizon}));
      std::vector<StateConstraint> sc{
          {"speed", StateSelector::all_steps({2, 3}, horizon), ProjectionSet::box(2, -1.0, 1.0)}};
      return build_oc_problem(model, x, cost, ProjectionSet::box(2 * horizon, -2.0, 2.0), sc, {}, horizon);
    };
  }
  Plant plant() const {
    return [this](const Vector &x, const Vector &u, int) { return model->step(x, u); };
  }
};

MpcOptions options(int steps) {
  MpcOptions opts;
  opts.steps = steps;
  opts.alspg.inner.epsilon = 1e-6;
  opts.alspg.record_iterates = false;
  return opts;
}

TEST(ShiftMultipliers, ShiftsPerStepSegments) {
  const Vector lambda = Vector::LinSpaced(6, 1.0, 6.0);
  EXPECT_EQ(shift_multipliers(lambda, 3), shift_controls(lambda, 2));
  EXPECT_EQ(shift_multipliers(lambda, 4), lambda);
}

TEST(MpcLoop, WarmStartNeedsNoMoreJacobiansThanCold) {
  // Regulation to the origin under a speed bound that is active for most of
  // the run.
  const auto model = std::make_shared<models::DoubleIntegrator2D>(0.1);
  const Index horizon = 20;
  MpcProblemBuilder build = [&](int, const Vector &x) {
    OcCost cost(Matrix::Identity(2, 2) * 1e-3);
    std::vector<Index> steps;
    for (Index t = 1; t <= horizon; ++t) steps.push_back(t);
    cost.add_state_term(quadratic_state_term(Matrix::Identity(4, 4), Vector::Zero(4), steps));
    std::vector<StateConstraint> sc{
        {"speed", StateSelector::all_steps({2, 3}, horizon), ProjectionSet::box(2, -0.3, 0.3)}};
    return build_oc_problem(model, x, cost, ProjectionSet::box(2 * horizon, -2.0, 2.0), sc, {}, horizon);
  };
  Plant plant = [&](const Vector &x, const Vector &u, int) { return model->step(x, u); };
  const MpcOptions opts = options(10);
  const MpcLog warm =
      mpc_loop(build, plant, (Vector(4) << 1.0, 1.0, 0.0, 0.0).finished(), Vector::Zero(2 * horizon), opts);
  ASSERT_EQ(warm.steps.size(), 10u);
  for (const auto &step : warm.steps) {
    OcProblem p = build(step.step, step.x);
    const long cold = alspg_solve(p.nlp(), Vector::Zero(2 * horizon), opts.alspg).report.n_jac;
    EXPECT_LE(step.n_jac, cold) << "step " << step.step;
    EXPECT_FALSE(step.held);
    ASSERT_EQ(step.residuals.size(), 1u);
    EXPECT_LE(step.residuals[0], opts.alspg.epsilon_outer);
  }
}

TEST(MpcLoop, StopsAtGoalAndLogsTotals) {
  const PointMassScenario s;
  MpcOptions opts = options(200);
  opts.goal_reached = [&s](int, const Vector &x) { return (x.head(2) - s.goal.head(2)).norm() < 0.05; };
  const MpcLog log = mpc_loop(s.builder(), s.plant(), Vector::Zero(4), Vector::Zero(2 * s.horizon), opts);
  EXPECT_TRUE(log.goal_reached);
  EXPECT_LT(static_cast<int>(log.steps.size()), 200);
  long nf = 0;
  for (const auto &step : log.steps) nf += step.n_f;
  EXPECT_EQ(nf, log.total_n_f);
}

TEST(MpcLoop, IlqrBackendRuns) {
  const PointMassScenario s;
  MpcOptions opts = options(5);
  opts.solver = MpcSolver::Ilqr;
  const MpcLog log = mpc_loop(s.builder(), s.plant(), Vector::Zero(4), Vector::Zero(2 * s.horizon), opts);
  EXPECT_EQ(log.steps.size(), 5u);
  EXPECT_GT(log.total_n_jac, 0);
  EXPECT_LT((log.final_state.head(2) - s.goal.head(2)).norm(), std::sqrt(2.0));
}

TEST(MpcLoop, HoldsPreviousControlOnSolverFailure) {
  const PointMassScenario s;
  int calls = 0;
  MpcProblemBuilder failing = [&](int k, const Vector &x) {
    OcProblem p = s.builder()(k, x);
    if (k == 2) {
      p.nlp().objective.value = [&calls](const Vector &) {
        ++calls;
        return std::numeric_limits<double>::quiet_NaN();
      };
    }
    return p;
  };
  const MpcLog log = mpc_loop(failing, s.plant(), Vector::Zero(4), Vector::Zero(2 * s.horizon), options(4));
  ASSERT_EQ(log.steps.size(), 4u);
  EXPECT_GT(calls, 0);
  EXPECT_TRUE(log.steps[2].held);
  EXPECT_EQ(log.steps[2].u, log.steps[1].u);
  EXPECT_FALSE(log.steps[3].held);
}

}  // namespace
}  // namespace alspg
