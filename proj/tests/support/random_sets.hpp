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

// Seeded random instances of every set variant, together with membership and
// nearest-point checks written directly from the set definitions.

#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alspg::oracle {

inline constexpr std::array<std::string_view, 11> kSetVariants = {
    "bounds",        "slab",        "quadric_annulus", "second_order_cone", "rectangle_in", "rectangle_out",
    "polytope_in",   "polytope_out", "transformed",    "product",           "point"};

/// A random set of the named variant together with the dimension it is used
/// in (dimension-agnostic sets get a random one).
struct SetCase {
  ProjectionSet set;
  Index dim = 0;
};

inline SetCase random_set(std::string_view variant, Rng &rng) {
  const auto coin = [&rng](double p) { return std::bernoulli_distribution(p)(rng); };
  if (variant == "bounds") {
    const Index n = random_dim(rng, 1, 6);
    Vector lo = normal_vector(rng, n).array() - 1.0;
    Vector hi = lo.array() + normal_vector(rng, n).array().abs() + 0.1;
    for (Index i = 0; i < n; ++i) {
      if (coin(0.15)) lo[i] = -kInf;
      if (coin(0.15)) hi[i] = kInf;
    }
    return {ProjectionSet::bounds(lo, hi), n};
  }
  if (variant == "slab") {
    const Index n = random_dim(rng, 1, 6);
    std::optional<double> lo, hi;
    const double a = uniform(rng, -1.0, 1.0);
    if (coin(0.8)) lo = a;
    if (coin(0.8) || !lo) hi = a + uniform(rng, 0.0, 2.0);
    return {ProjectionSet::slab(normal_vector(rng, n), lo, hi), n};
  }
  if (variant == "quadric_annulus") {
    const Index n = random_dim(rng, 1, 5);
    const double lo = coin(0.8) ? uniform(rng, 0.05, 1.0) : 0.0;
    const double hi = coin(0.8) ? lo + uniform(rng, 0.1, 2.0) : kInf;
    return {ProjectionSet::annulus(normal_vector(rng, n), lo, hi), n};
  }
  if (variant == "second_order_cone") return {ProjectionSet::second_order_cone(), random_dim(rng, 2, 6)};
  if (variant == "rectangle_in") return {ProjectionSet::rectangle_in(uniform(rng, 0.2, 2.0)), random_dim(rng, 1, 5)};
  if (variant == "rectangle_out") return {ProjectionSet::rectangle_out(uniform(rng, 0.2, 2.0)), random_dim(rng, 1, 5)};
  if (variant == "polytope_in" || variant == "polytope_out") {
    const Index n = random_dim(rng, 2, 4);
    auto rows = random_rows(rng, n, static_cast<int>(random_dim(rng, 1, 6)));
    return {variant == "polytope_in" ? ProjectionSet::polytope_in(rows) : ProjectionSet::polytope_out(rows), n};
  }
  if (variant == "transformed") {
    const Index n = random_dim(rng, 2, 4);
    const Matrix q = random_rotation(rng, n);
    const Vector c = normal_vector(rng, n);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0: {
        const Vector d = (normal_vector(rng, n).array().abs() + 0.3).matrix();
        return {ProjectionSet::transformed(ProjectionSet::rectangle_out(uniform(rng, 0.2, 1.5)), d.asDiagonal() * q, c),
                n};
      }
      case 1: {
        const Vector d = (normal_vector(rng, n).array().abs() + 0.3).matrix();
        return {ProjectionSet::transformed(ProjectionSet::rectangle_in(uniform(rng, 0.2, 1.5)), d.asDiagonal() * q, c),
                n};
      }
      case 2: {
        const double lo = uniform(rng, 0.05, 1.0);
        return {ProjectionSet::transformed(ProjectionSet::annulus(normal_vector(rng, n), lo, lo + 1.0), q, c), n};
      }
      default:
        return {ProjectionSet::transformed(ProjectionSet::second_order_cone(), q, c), n};
    }
  }
  if (variant == "product") {
    const Index n1 = random_dim(rng, 1, 3);
    const Index n2 = random_dim(rng, 1, 3);
    const Index n3 = random_dim(rng, 2, 3);
    const double lo = uniform(rng, 0.05, 1.0);
    return {ProjectionSet::product({ProjectionSet::box(n1, -1.0, 1.0), ProjectionSet::rectangle_out(uniform(rng, 0.2, 1.0)),
                                    ProjectionSet::annulus(normal_vector(rng, n3), lo, lo + 1.0)},
                                   {n1, n2, n3}),
            n1 + n2 + n3};
  }
  if (variant == "point") {
    const Index n = random_dim(rng, 1, 5);
    return {ProjectionSet::point(normal_vector(rng, n)), n};
  }
  throw std::invalid_argument("random_set: unknown variant");
}

/// Membership straight from the set definitions.
inline bool member(const ProjectionSet &set, const Vector &x, double tol) {
  const SetVariant &v = set.variant();
  if (const auto *b = std::get_if<Bounds>(&v)) {
    for (Index i = 0; i < x.size(); ++i) {
      if (x[i] < b->lower[i] - tol || x[i] > b->upper[i] + tol) return false;
    }
    return true;
  }
  if (const auto *s = std::get_if<HyperplaneSlab>(&v)) {
    const double a = s->normal.dot(x);
    return (!s->lower || a >= *s->lower - tol) && (!s->upper || a <= *s->upper + tol);
  }
  if (const auto *q = std::get_if<QuadricAnnulus>(&v)) {
    const double e = 0.5 * (x - q->center).squaredNorm();
    return e >= q->lower - tol && e <= q->upper + tol;
  }
  if (std::get_if<SecondOrderCone>(&v)) {
    return x.head(x.size() - 1).norm() <= x[x.size() - 1] + tol;
  }
  if (const auto *r = std::get_if<RectangleIn>(&v)) return x.cwiseAbs().maxCoeff() <= r->halfwidth + tol;
  if (const auto *r = std::get_if<RectangleOut>(&v)) return x.cwiseAbs().maxCoeff() >= r->halfwidth - tol;
  if (const auto *p = std::get_if<PolytopeIn>(&v)) {
    return std::all_of(p->rows.begin(), p->rows.end(),
                       [&](const HalfspaceRow &r) { return r.normal.dot(x) <= r.offset + tol; });
  }
  if (const auto *p = std::get_if<PolytopeOut>(&v)) {
    return std::any_of(p->rows.begin(), p->rows.end(),
                       [&](const HalfspaceRow &r) { return r.normal.dot(x) >= r.offset - tol; });
  }
  if (const auto *t = std::get_if<Transformed>(&v)) {
    return member(*t->inner, Vector(t->transform * (x - t->center)), tol);
  }
  if (const auto *p = std::get_if<Product>(&v)) {
    Index off = 0;
    for (std::size_t i = 0; i < p->parts.size(); ++i) {
      if (!member(*p->parts[i], x.segment(off, p->part_dims[i]), tol)) return false;
      off += p->part_dims[i];
    }
    return true;
  }
  if (const auto *p = std::get_if<Point>(&v)) return (x - p->target).cwiseAbs().maxCoeff() <= tol;
  throw std::logic_error("member: unhandled variant");
}

inline bool nonconvex(const ProjectionSet &set) {
  const SetVariant &v = set.variant();
  if (const auto *q = std::get_if<QuadricAnnulus>(&v)) return q->lower > 0.0;
  if (std::get_if<RectangleOut>(&v)) return true;
  if (const auto *p = std::get_if<PolytopeOut>(&v)) return p->rows.size() > 1;
  if (const auto *t = std::get_if<Transformed>(&v)) return nonconvex(*t->inner);
  if (const auto *p = std::get_if<Product>(&v)) {
    return std::any_of(p->parts.begin(), p->parts.end(), [](const auto &s) { return nonconvex(*s); });
  }
  return false;
}

/// Points on the boundary of a nonconvex set that together contain a nearest
/// point to x, plus `random_extra` random boundary points. Not defined for
/// products; check those part by part.
inline std::vector<Vector> boundary_samples(const ProjectionSet &set, const Vector &x, Rng &rng,
                                            int random_extra = 16) {
  std::vector<Vector> out;
  const SetVariant &v = set.variant();
  const Index n = x.size();
  if (member(set, x, 0.0)) out.push_back(x);
  if (const auto *q = std::get_if<QuadricAnnulus>(&v)) {
    std::vector<double> radii{std::sqrt(2.0 * q->lower)};
    if (std::isfinite(q->upper)) radii.push_back(std::sqrt(2.0 * q->upper));
    const Vector off = x - q->center;
    for (double r : radii) {
      if (off.norm() > 0.0) out.push_back(q->center + r * off.normalized());
      for (int k = 0; k < random_extra; ++k) out.push_back(q->center + r * normal_vector(rng, n).normalized());
    }
    return out;
  }
  if (const auto *r = std::get_if<RectangleOut>(&v)) {
    for (Index i = 0; i < n; ++i) {
      for (double s : {-1.0, 1.0}) {
        Vector y = x;
        y[i] = s * r->halfwidth;
        out.push_back(y);
      }
    }
    for (int k = 0; k < random_extra; ++k) {
      Vector y = Vector::NullaryExpr(n, [&] { return uniform(rng, -r->halfwidth, r->halfwidth); });
      y[random_dim(rng, 0, n - 1)] = std::bernoulli_distribution(0.5)(rng) ? r->halfwidth : -r->halfwidth;
      out.push_back(y);
    }
    return out;
  }
  if (const auto *p = std::get_if<PolytopeOut>(&v)) {
    for (const auto &row : p->rows) {
      out.push_back(x + (row.offset - row.normal.dot(x)) / row.normal.squaredNorm() * row.normal);
      for (int k = 0; k < random_extra / 4; ++k) {
        const Vector z = normal_vector(rng, n, 2.0);
        out.push_back(z + (row.offset - row.normal.dot(z)) / row.normal.squaredNorm() * row.normal);
      }
    }
    return out;
  }
  if (const auto *t = std::get_if<Transformed>(&v)) {
    // transform = D Q with Q orthogonal; D = I unless the inner set is a
    // rectangle.
    const Vector d = t->transform.rowwise().norm();
    const Matrix q = d.cwiseInverse().asDiagonal() * t->transform;
    const Vector z = q * (x - t->center);
    if (const auto *r = t->inner->get_if<RectangleOut>()) {
      for (Index i = 0; i < n; ++i) {
        for (double s : {-1.0, 1.0}) {
          Vector y = z;
          y[i] = s * r->halfwidth / d[i];
          out.push_back(t->center + q.transpose() * y);
        }
      }
      return out;
    }
    for (const Vector &w : boundary_samples(*t->inner, z, rng, random_extra)) {
      out.push_back(t->center + q.transpose() * w);
    }
    return out;
  }
  throw std::logic_error("boundary_samples: unsupported set");
}

/// A member of the set drawn without using any projection: rejection sampling
/// around a reference point, or direct construction.
inline std::optional<Vector> sample_member(const ProjectionSet &set, Index dim, Rng &rng) {
  const SetVariant &v = set.variant();
  if (const auto *p = std::get_if<Point>(&v)) return p->target;
  if (const auto *s = std::get_if<HyperplaneSlab>(&v)) {
    const Vector z = normal_vector(rng, dim, 2.0);
    const double a = s->normal.dot(z);
    const double lo = s->lower.value_or(a - 1.0);
    const double hi = s->upper.value_or(lo + 2.0);
    const double target = uniform(rng, lo, std::max(lo, hi));
    return z + (target - a) / s->normal.squaredNorm() * s->normal;
  }
  if (const auto *b = std::get_if<Bounds>(&v)) {
    Vector y(dim);
    for (Index i = 0; i < dim; ++i) {
      const double lo = std::isfinite(b->lower[i]) ? b->lower[i] : b->upper[i] - 3.0;
      const double hi = std::isfinite(b->upper[i]) ? b->upper[i] : lo + 3.0;
      y[i] = uniform(rng, lo, hi);
    }
    return y;
  }
  if (const auto *t = std::get_if<Transformed>(&v)) {
    const auto w = sample_member(*t->inner, dim, rng);
    if (!w) return std::nullopt;
    return Vector(t->center + t->transform.lu().solve(*w));
  }
  if (const auto *p = std::get_if<Product>(&v)) {
    Vector y(dim);
    Index off = 0;
    for (std::size_t i = 0; i < p->parts.size(); ++i) {
      const auto part = sample_member(*p->parts[i], p->part_dims[i], rng);
      if (!part) return std::nullopt;
      y.segment(off, p->part_dims[i]) = *part;
      off += p->part_dims[i];
    }
    return y;
  }
  Vector center = Vector::Zero(dim);
  if (const auto *q = std::get_if<QuadricAnnulus>(&v)) center = q->center;
  for (int attempt = 0; attempt < 5000; ++attempt) {
    const Vector y = center + normal_vector(rng, dim, 2.0);
    if (member(set, y, 0.0)) return y;
  }
  return std::nullopt;
}

/// Reference point a query cloud is centered on.
inline Vector set_center(const ProjectionSet &set, Index dim) {
  if (const auto *q = set.get_if<QuadricAnnulus>()) return q->center;
  if (const auto *t = set.get_if<Transformed>()) return t->center;
  if (const auto *p = set.get_if<Point>()) return p->target;
  return Vector::Zero(dim);
}

}  // namespace alspg::oracle
