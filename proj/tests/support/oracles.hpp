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

// Independent reference computations shared by the unit and acceptance
// tests. Nothing here calls into the library code it is used to check.

#include "alspg/geomproj.hpp"
#include "alspg/shooting.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace alspg::oracle {

using Rng = std::mt19937_64;

inline Vector normal_vector(Rng &rng, Index n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = d(rng);
  return v;
}

inline double uniform(Rng &rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Matrix random_rotation(Rng &rng, Index n) {
  Eigen::HouseholderQR<Matrix> qr(Matrix(normal_vector(rng, n * n).reshaped(n, n)));
  return qr.householderQ();
}

inline Index random_dim(Rng &rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline std::vector<HalfspaceRow> random_rows(Rng &rng, Index dim, int count) {
  std::vector<HalfspaceRow> rows;
  for (int i = 0; i < count; ++i) rows.push_back({normal_vector(rng, dim), uniform(rng, 0.1, 1.0)});
  return rows;
}

/// Central differences of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector &)> &f, const Vector &x, double h = 1e-6) {
  Vector g(x.size());
  Vector xp = x, xm = x;
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    g[i] = (f(xp) - f(xm)) / (2.0 * h);
    xp[i] = xm[i] = x[i];
  }
  return g;
}

/// Central-difference Jacobian of a vector function.
inline Matrix fd_jacobian(const std::function<Vector(const Vector &)> &f, const Vector &x, double h = 1e-6) {
  const Index m = f(x).size();
  Matrix j(m, x.size());
  Vector xp = x, xm = x;
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    j.col(i) = (f(xp) - f(xm)) / (2.0 * h);
    xp[i] = xm[i] = x[i];
  }
  return j;
}

/// Euclidean projection onto {a_i^T x <= u_i} by enumerating active sets: for
/// every subset S, the equality-constrained minimizer is a candidate; the
/// nearest feasible candidate is the projection. Exponential in the number of
/// rows, meant for a handful of rows.
inline Vector enumerate_polytope_projection(const std::vector<HalfspaceRow> &rows, const Vector &x0) {
  const std::size_t m = rows.size();
  const Index n = x0.size();
  Vector best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) active.push_back(i);
    }
    if (static_cast<Index>(active.size()) > n) continue;
    Vector x = x0;
    if (!active.empty()) {
      Matrix a(static_cast<Index>(active.size()), n);
      Vector u(static_cast<Index>(active.size()));
      for (std::size_t k = 0; k < active.size(); ++k) {
        a.row(static_cast<Index>(k)) = rows[active[k]].normal.transpose();
        u[static_cast<Index>(k)] = rows[active[k]].offset;
      }
      const Matrix aat = a * a.transpose();
      Eigen::FullPivLU<Matrix> lu(aat);
      if (lu.rank() < aat.rows()) continue;
      x = x0 - a.transpose() * lu.solve(Vector(a * x0 - u));
    }
    bool feasible = true;
    for (const auto &r : rows) feasible = feasible && r.normal.dot(x) <= r.offset + 1e-10;
    const double dist = (x - x0).norm();
    if (feasible && dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

/// Nearest point of the union of halfspaces a_i^T x >= l_i, by checking every
/// halfspace.
inline Vector enumerate_union_projection(const std::vector<HalfspaceRow> &rows, const Vector &x0) {
  Vector best = x0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto &r : rows) {
    const double gap = r.offset - r.normal.dot(x0);
    if (gap <= 0.0) return x0;
    const Vector x = x0 + gap / r.normal.squaredNorm() * r.normal;
    const double dist = gap / r.normal.norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = x;
    }
  }
  return best;
}

/// Dense Jacobian of the rollout states (x_1..x_T stacked) with respect to
/// the controls (u_0..u_{T-1} stacked): block (t, s) = A_{t-1} ... A_{s+1} B_s
/// for s < t.
inline Matrix dense_rollout_jacobian(const std::vector<Matrix> &a, const std::vector<Matrix> &b) {
  const Index T = static_cast<Index>(a.size());
  const Index n = a.front().rows();
  const Index m = b.front().cols();
  Matrix g = Matrix::Zero(T * n, T * m);
  for (Index s = 0; s < T; ++s) {
    Matrix block = b[static_cast<std::size_t>(s)];
    for (Index t = s + 1; t <= T; ++t) {
      g.block((t - 1) * n, s * m, n, m) = block;
      if (t < T) block = a[static_cast<std::size_t>(t)] * block;
    }
  }
  return g;
}

/// Finite-horizon LQR for x_{t+1} = A x_t + B u_t with cost
/// sum_{t=1..T} x_t^T Q_t x_t + sum_{t=0..T-1} u_t^T R u_t by the backward
/// Riccati recursion; returns the optimal controls from x0.
inline Vector riccati_controls(const Matrix &a, const Matrix &b, const std::vector<Matrix> &q, const Matrix &r,
                               const Vector &x0) {
  const std::size_t T = q.size();
  std::vector<Matrix> gains(T);
  Matrix p = q[T - 1];
  for (std::size_t t = T; t-- > 0;) {
    const Matrix h = r + b.transpose() * p * b;
    gains[t] = h.ldlt().solve(b.transpose() * p * a);
    const Matrix acl = a - b * gains[t];
    p = acl.transpose() * p * acl + gains[t].transpose() * r * gains[t];
    if (t > 0) p += q[t - 1];
  }
  const Index m = b.cols();
  Vector u(static_cast<Index>(T) * m);
  Vector x = x0;
  for (std::size_t t = 0; t < T; ++t) {
    const Vector ut = -gains[t] * x;
    u.segment(static_cast<Index>(t) * m, m) = ut;
    x = a * x + b * ut;
  }
  return u;
}

}  // namespace alspg::oracle
