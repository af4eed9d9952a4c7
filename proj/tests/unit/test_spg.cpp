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
#include "alspg/spg.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace alspg {
namespace {

using oracle::normal_vector;
using oracle::Rng;

SmoothFunction diagonal_quadratic(Vector h, Vector c) {
  return {[h, c](const Vector &x) { return 0.5 * (x - c).cwiseProduct(h).dot(x - c); },
          [h, c](const Vector &x) -> Vector { return h.cwiseProduct(x - c); }};
}

TEST(LineSearch, HandWorkedQuadraticBacktrack) {
  // f(x) = x^2 from x = 1 along d = -2: the unit step lands on f = 1 and is
  // rejected; the quadratic model minimizer alpha = 0.5 hits x = 0.
  const auto f = [](const Vector &x) { return x.squaredNorm(); };
  ObjectiveHistory history(10);
  history.push(1.0);
  const Vector x = Vector::Constant(1, 1.0);
  const Vector d = Vector::Constant(1, -2.0);
  const auto ls = nonmonotone_linesearch(f, x, d, -4.0, 1.0, history);
  EXPECT_EQ(ls.status, LineSearchStatus::Accepted);
  EXPECT_EQ(ls.evaluations, 2);
  EXPECT_DOUBLE_EQ(ls.alpha, 0.5);
  EXPECT_DOUBLE_EQ(ls.f_trial, 0.0);
}

TEST(LineSearch, NonmonotoneReferenceAcceptsUnitStep) {
  const auto f = [](const Vector &x) { return x.squaredNorm(); };
  ObjectiveHistory history(10);
  history.push(5.0);
  history.push(1.0);
  const auto ls = nonmonotone_linesearch(f, Vector::Constant(1, 1.0), Vector::Constant(1, -2.0), -4.0, 1.0, history);
  EXPECT_EQ(ls.status, LineSearchStatus::Accepted);
  EXPECT_EQ(ls.evaluations, 1);
  EXPECT_DOUBLE_EQ(ls.alpha, 1.0);
}

TEST(LineSearch, RejectsAscentAndReportsNaN) {
  const auto f = [](const Vector &) { return std::numeric_limits<double>::quiet_NaN(); };
  ObjectiveHistory history(3);
  history.push(0.0);
  const Vector x = Vector::Zero(1);
  EXPECT_EQ(nonmonotone_linesearch(f, x, x, 1.0, 0.0, history).status, LineSearchStatus::NotDescent);
  EXPECT_EQ(nonmonotone_linesearch(f, x, Vector::Ones(1), -1.0, 0.0, history).status,
            LineSearchStatus::CallbackFailure);
}

TEST(ObjectiveHistoryTest, KeepsLastValues) {
  ObjectiveHistory h(2);
  h.push(3.0);
  h.push(1.0);
  h.push(2.0);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h.max(), 2.0);
  EXPECT_THROW(ObjectiveHistory(1).max(), std::logic_error);
}

TEST(SpectralStep, CurvatureCases) {
  SpgOptions opts;
  const Vector s = (Vector(2) << 1.0, 1.0).finished();
  // y = H s with H = diag(1, 10): gamma1 = 2 / 11, gamma2 = 11 / 101.
  const auto step = spectral_stepsize_update(s, (Vector(2) << 1.0, 10.0).finished(), 1.0, opts);
  EXPECT_DOUBLE_EQ(step.gamma1, 2.0 / 11.0);
  EXPECT_DOUBLE_EQ(step.gamma2, 11.0 / 101.0);
  EXPECT_DOUBLE_EQ(step.gamma, 11.0 / 101.0);
  EXPECT_DOUBLE_EQ(spectral_stepsize_update(s, -s, 1.0, opts).gamma, opts.gamma_max);
  EXPECT_DOUBLE_EQ(spectral_stepsize_update(Vector::Zero(2), s, 0.3, opts).gamma, 0.3);
}

TEST(Spg, PinnedStepGivesProjectedGradientDirections) {
  Rng rng(3);
  const Vector h = (Vector(3) << 1.0, 4.0, 9.0).finished();
  const Vector c = (Vector(3) << 2.0, -3.0, 0.5).finished();
  const Vector lo = Vector::Constant(3, -1.0), hi = Vector::Constant(3, 1.0);
  SpgOptions opts;
  opts.gamma_min = opts.gamma_max = 1.0;
  opts.initial_gamma = 1.0;
  opts.epsilon = 1e-10;
  int checked = 0;
  opts.observer = [&](const SpgIterate &it) {
    EXPECT_EQ(it.gamma, 1.0);
    const Vector classical = (*it.x - *it.gradient).cwiseMax(lo).cwiseMin(hi) - *it.x;
    EXPECT_EQ(*it.direction, classical) << "iteration " << it.iteration;
    ++checked;
  };
  const auto res = spg_minimize(diagonal_quadratic(h, c), ProjectionSet::bounds(lo, hi), normal_vector(rng, 3), opts);
  EXPECT_GT(checked, 0);
  EXPECT_EQ(res.report.termination, Termination::Converged);
}

TEST(Spg, SpectralStepsStayInInverseEigenvalueRange) {
  Rng rng(4);
  const Vector h = (Vector(2) << 1.0, 10.0).finished();
  for (int trial = 0; trial < 50; ++trial) {
    const Vector c = normal_vector(rng, 2, 3.0);
    SpgOptions opts;
    opts.epsilon = 1e-12;
    int checked = 0;
    opts.observer = [&](const SpgIterate &it) {
      if (it.gamma1 == 0.0) return;  // zero step at the solution
      EXPECT_GE(it.gamma1, 0.1 - 1e-12);
      EXPECT_LE(it.gamma1, 1.0 + 1e-12);
      EXPECT_GE(it.gamma2, 0.1 - 1e-12);
      EXPECT_LE(it.gamma2, 1.0 + 1e-12);
      ++checked;
    };
    const auto set = trial % 2 == 0 ? ProjectionSet::unbounded(2) : ProjectionSet::box(2, -0.5, 0.5);
    spg_minimize(diagonal_quadratic(h, c), set, normal_vector(rng, 2, 3.0), opts);
    // A box start can already sit at the optimal corner.
    if (trial % 2 == 0) {
      EXPECT_GT(checked, 0);
    }
  }
}

TEST(Spg, BoxQuadraticMatchesClamp) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector c = normal_vector(rng, 5, 2.0);
    SpgOptions opts;
    opts.epsilon = 1e-10;
    const auto res = spg_minimize(diagonal_quadratic(Vector::Ones(5), c), ProjectionSet::box(5, -1.0, 1.0),
                                  Vector::Zero(5), opts);
    EXPECT_EQ(res.report.termination, Termination::Converged);
    EXPECT_LE((res.x - c.cwiseMax(-1.0).cwiseMin(1.0)).lpNorm<Eigen::Infinity>(), 1e-9);
  }
}

TEST(Spg, RosenbrockUnconstrained) {
  SmoothFunction rosen{
      [](const Vector &x) { return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2); },
      [](const Vector &x) -> Vector {
        return (Vector(2) << -400.0 * x[0] * (x[1] - x[0] * x[0]) - 2.0 * (1.0 - x[0]),
                200.0 * (x[1] - x[0] * x[0]))
            .finished();
      }};
  SpgOptions opts;
  opts.epsilon = 1e-8;
  opts.max_iters = 20000;
  const auto res = spg_minimize(rosen, ProjectionSet::unbounded(2), (Vector(2) << -1.2, 1.0).finished(), opts);
  EXPECT_EQ(res.report.termination, Termination::Converged);
  EXPECT_NEAR(res.x[0], 1.0, 1e-6);
  EXPECT_NEAR(res.x[1], 1.0, 1e-6);
}

TEST(Spg, GradientCountIsIterationsPlusStartAndProbe) {
  const auto res = spg_minimize(diagonal_quadratic((Vector(3) << 1.0, 2.0, 3.0).finished(), Vector::Ones(3)),
                                ProjectionSet::unbounded(3), Vector::Zero(3));
  EXPECT_EQ(res.report.termination, Termination::Converged);
  EXPECT_EQ(res.report.n_grad, res.report.iterations + 2);
  EXPECT_GE(res.report.n_f, res.report.iterations + 1);
  EXPECT_EQ(res.report.f_trace.size(), static_cast<std::size_t>(res.report.iterations + 1));
}

TEST(Spg, NonconvexSetEndsOnBoundary) {
  // Nearest point to (0.2, 0.1) outside the unit square.
  const Vector c = (Vector(2) << 0.2, 0.1).finished();
  SpgOptions opts;
  opts.epsilon = 1e-10;
  const auto res = spg_minimize(diagonal_quadratic(Vector::Ones(2), c), ProjectionSet::rectangle_out(1.0),
                                (Vector(2) << 2.0, 0.5).finished(), opts);
  EXPECT_NEAR(res.x.cwiseAbs().maxCoeff(), 1.0, 1e-9);
  EXPECT_NEAR(res.x[0], 1.0, 1e-9);
  EXPECT_NEAR(res.x[1], 0.1, 1e-9);
}

TEST(Spg, ReportsCallbackFailureAndMaxIters) {
  SmoothFunction bad{[](const Vector &) { return std::numeric_limits<double>::quiet_NaN(); },
                     [](const Vector &x) -> Vector { return x; }};
  EXPECT_EQ(spg_minimize(bad, ProjectionSet::unbounded(1), Vector::Ones(1)).report.termination,
            Termination::CallbackFailure);
  SpgOptions opts;
  opts.max_iters = 2;
  opts.epsilon = 1e-14;
  const auto res = spg_minimize(diagonal_quadratic((Vector(2) << 1.0, 100.0).finished(), Vector::Ones(2)),
                                ProjectionSet::unbounded(2), Vector::Zero(2), opts);
  EXPECT_EQ(res.report.termination, Termination::MaxIters);
  EXPECT_EQ(res.report.iterations, 2);
}

TEST(SpgOptionsTest, Validation) {
  SpgOptions opts;
  opts.beta = 1.5;
  EXPECT_THROW(opts.validate(), std::invalid_argument);
  opts = {};
  opts.gamma_min = 2.0;
  opts.gamma_max = 1.0;
  EXPECT_THROW(opts.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace alspg
