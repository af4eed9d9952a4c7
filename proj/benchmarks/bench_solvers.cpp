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
// Gradient and solve cost as the horizon grows.

#include "alspg/ilqr.hpp"
#include "alspg/models/planar_arm.hpp"
#include "alspg/shooting.hpp"
#include "alspg/spg.hpp"

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

namespace {

using namespace alspg;

struct Reach {
  std::shared_ptr<const models::ArmVelocityModel> model;
  OcCost cost;
  Vector x0;
  Index horizon;
};

// Seven links of total length 3, as in the bundled scaling configs.
constexpr Index kDof = 7;

Reach reach(Index horizon) {
  const models::PlanarArm arm(Vector::Constant(kDof, 3.0 / kDof));
  Reach r{std::make_shared<models::ArmVelocityModel>(kDof, 0.01), OcCost(1e-3 * Matrix::Identity(kDof, kDof)),
          Vector::Constant(kDof, 0.1), horizon};
  r.cost.add_state_term(models::arm_reach_term(arm, Eigen::Vector2d(1.2, 1.6), 1.0, {horizon}));
  return r;
}

OcProblem problem(const Reach &r) {
  return build_oc_problem(r.model, r.x0, r.cost, ProjectionSet::unbounded(r.horizon * kDof), {}, {}, r.horizon);
}

void BM_JacTransposeVec(benchmark::State &state) {
  const Index T = state.range(0);
  const Reach r = reach(T);
  const Trajectory traj = rollout(*r.model, r.x0, Vector::Constant(T * kDof, 0.1));
  const LinearizedDynamics lin = linearize(*r.model, traj);
  const Vector y = Vector::Ones(T * kDof);
  for (auto _ : state) benchmark::DoNotOptimize(jac_transpose_vec(lin, y, T, kDof, kDof));
  state.SetComplexityN(T);
}

void BM_ShootingGradient(benchmark::State &state) {
  const Index T = state.range(0);
  const OcProblem p = problem(reach(T));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal(0.0, 0.1);
  Vector u(T * kDof);
  for (auto _ : state) {
    // A fresh control vector defeats the rollout cache.
    state.PauseTiming();
    for (Index i = 0; i < u.size(); ++i) u[i] = normal(rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(p.nlp().objective.gradient(u));
  }
  state.SetComplexityN(T);
}

void BM_SpgReach(benchmark::State &state) {
  const Index T = state.range(0);
  const OcProblem p = problem(reach(T));
  SpgOptions opts;
  opts.epsilon = 1e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spg_minimize(p.nlp().objective, p.nlp().domain, Vector::Zero(T * kDof), opts));
  }
  state.SetComplexityN(T);
}

void BM_IlqrReach(benchmark::State &state) {
  const Index T = state.range(0);
  const Reach r = reach(T);
  IlqrOptions opts;
  opts.tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ilqr_solve(*r.model, r.x0, r.cost, Vector::Zero(T * kDof), opts));
  }
  state.SetComplexityN(T);
}

BENCHMARK(BM_JacTransposeVec)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);
BENCHMARK(BM_ShootingGradient)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);
BENCHMARK(BM_SpgReach)->Arg(100)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);
BENCHMARK(BM_IlqrReach)->Arg(100)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

}  // namespace
