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
// Projection throughput per set family.

#include "alspg/geomproj.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using alspg::Index;
using alspg::ProjectionSet;
using alspg::Vector;

std::vector<Vector> inputs(Index dim, int count) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 2.0);
  std::vector<Vector> out;
  for (int i = 0; i < count; ++i) {
    Vector v(dim);
    for (Index k = 0; k < dim; ++k) v[k] = normal(rng);
    out.push_back(v);
  }
  return out;
}

void run(benchmark::State &state, const ProjectionSet &set, Index dim) {
  const auto xs = inputs(dim, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(alspg::project(set, xs[i++ % xs.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}

std::vector<alspg::HalfspaceRow> rows(Index dim, int count) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  std::vector<alspg::HalfspaceRow> out;
  for (int i = 0; i < count; ++i) {
    Vector a(dim);
    for (Index k = 0; k < dim; ++k) a[k] = normal(rng);
    out.push_back({a.normalized(), 0.5});
  }
  return out;
}

void BM_Bounds(benchmark::State &s) {
  const Index n = s.range(0);
  run(s, ProjectionSet::box(n, -1.0, 1.0), n);
}
void BM_Annulus(benchmark::State &s) {
  const Index n = s.range(0);
  run(s, ProjectionSet::annulus_radii(Vector::Zero(n), 0.5, 1.5), n);
}
void BM_SecondOrderCone(benchmark::State &s) { run(s, ProjectionSet::second_order_cone(), s.range(0)); }
void BM_RectangleOut(benchmark::State &s) {
  run(s, ProjectionSet::rectangle2d(Eigen::Vector2d(0.3, 0.1), 0.8, 0.4, 0.6, false), 2);
}
void BM_PolytopeIn(benchmark::State &s) {
  run(s, ProjectionSet::polytope_in(rows(3, static_cast<int>(s.range(0)))), 3);
}
void BM_PolytopeOut(benchmark::State &s) {
  run(s, ProjectionSet::polytope_out(rows(3, static_cast<int>(s.range(0)))), 3);
}
void BM_RepeatedRectangleOut(benchmark::State &s) {
  const Index count = s.range(0);
  const auto part = ProjectionSet::rectangle2d(Eigen::Vector2d(0.3, 0.1), 0.8, 0.4, 0.6, false);
  run(s, ProjectionSet::repeated(part, 2, count), 2 * count);
}

BENCHMARK(BM_Bounds)->Arg(2)->Arg(64)->Arg(4096);
BENCHMARK(BM_Annulus)->Arg(2)->Arg(64)->Arg(4096);
BENCHMARK(BM_SecondOrderCone)->Arg(3)->Arg(64)->Arg(4096);
BENCHMARK(BM_RectangleOut);
BENCHMARK(BM_PolytopeIn)->Arg(4)->Arg(8);
BENCHMARK(BM_PolytopeOut)->Arg(4)->Arg(8);
BENCHMARK(BM_RepeatedRectangleOut)->Arg(100)->Arg(1000);

}  // namespace
