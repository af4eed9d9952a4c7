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

// Seeded property sweep over the projection of one set variant.

#include "random_sets.hpp"

#include <string>

namespace alspg::oracle {

struct ProjectionSweep {
  int inputs = 0;
  int membership_failures = 0;
  int idempotence_failures = 0;
  int inequality_failures = 0;
  int optimality_failures = 0;
  double worst_idempotence = 0.0;
  double worst_inequality = 0.0;
  double worst_optimality = 0.0;
  std::string first_failure;

  int failures() const {
    return membership_failures + idempotence_failures + inequality_failures + optimality_failures;
  }
};

struct SweepTolerances {
  double membership = 1e-9;
  double idempotence = 1e-9;
  double inequality = 1e-8;
  double optimality = 1e-6;
};

namespace detail {

// Variational inequality (x0 - p)^T (y - p) <= tol for members y, or
// nearest-point optimality against boundary samples for nonconvex sets.
inline void check_optimality(const ProjectionSet &set, Index dim, const Vector &x0, const Vector &p, Rng &rng,
                             const SweepTolerances &tol, ProjectionSweep &out, bool &failed) {
  if (const auto *prod = set.get_if<Product>()) {
    Index off = 0;
    for (std::size_t i = 0; i < prod->parts.size(); ++i) {
      const Index d = prod->part_dims[i];
      check_optimality(*prod->parts[i], d, x0.segment(off, d), p.segment(off, d), rng, tol, out, failed);
      off += d;
    }
    return;
  }
  if (nonconvex(set)) {
    double best = kInf;
    for (const Vector &b : boundary_samples(set, x0, rng)) {
      if (member(set, b, 1e-9)) best = std::min(best, (b - x0).norm());
    }
    const double excess = (p - x0).norm() - best;
    out.worst_optimality = std::max(out.worst_optimality, excess);
    if (excess > tol.optimality) {
      ++out.optimality_failures;
      failed = true;
    }
    return;
  }
  for (int k = 0; k < 8; ++k) {
    const auto y = sample_member(set, dim, rng);
    if (!y) continue;
    const double vi = (x0 - p).dot(*y - p);
    out.worst_inequality = std::max(out.worst_inequality, vi);
    if (vi > tol.inequality) {
      ++out.inequality_failures;
      failed = true;
      return;
    }
  }
}

}  // namespace detail

inline ProjectionSweep sweep_projection(std::string_view variant, int inputs, std::uint64_t seed,
                                        const SweepTolerances &tol = {}) {
  Rng rng(seed);
  ProjectionSweep out;
  SetCase sc = random_set(variant, rng);
  for (int i = 0; i < inputs; ++i) {
    if (i % 50 == 0) sc = random_set(variant, rng);
    const Vector x0 = set_center(sc.set, sc.dim) + normal_vector(rng, sc.dim, 2.0);
    const Vector p = project(sc.set, x0);
    ++out.inputs;
    bool failed = false;

    if (!member(sc.set, p, tol.membership)) {
      ++out.membership_failures;
      failed = true;
    }
    const Vector pp = project(sc.set, p);
    const double idem = (pp - p).lpNorm<Eigen::Infinity>();
    out.worst_idempotence = std::max(out.worst_idempotence, idem);
    if (idem > tol.idempotence) {
      ++out.idempotence_failures;
      failed = true;
    }
    detail::check_optimality(sc.set, sc.dim, x0, p, rng, tol, out, failed);
    if (failed && out.first_failure.empty()) out.first_failure = "input " + std::to_string(i);
  }
  return out;
}

}  // namespace alspg::oracle
