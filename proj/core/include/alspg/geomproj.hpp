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

#include "alspg/types.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace alspg {

/// Geometric sets with closed-form (or finite) Euclidean projections.
///
/// Every set is an immutable value. Construct through the static factories of
/// ProjectionSet, which validate the parameters; the variant structs are
/// exposed read-only so that callers (serializers, renderers) can inspect
/// them.

class ProjectionSet;

/// l <= x <= u componentwise; entries may be +-infinity.
struct Bounds {
  Vector lower;
  Vector upper;
};

/// l <= a^T x <= u. A missing side is unbounded.
struct HyperplaneSlab {
  Vector normal;
  std::optional<double> lower;
  std::optional<double> upper;
};

/// l <= 0.5 * ||x - c||^2 <= u. upper may be +infinity.
struct QuadricAnnulus {
  Vector center;
  double lower = 0.0;
  double upper = kInf;
};

/// Unit cone {(z, t) : ||z|| <= t}; t is the last coordinate.
struct SecondOrderCone {};

/// ||x||_inf <= halfwidth, centered at the origin.
struct RectangleIn {
  double halfwidth = 1.0;
};

/// ||x||_inf >= halfwidth, centered at the origin.
struct RectangleOut {
  double halfwidth = 1.0;
};

struct HalfspaceRow {
  Vector normal;
  double offset = 0.0;
};

/// Intersection of a_i^T x <= u_i.
struct PolytopeIn {
  std::vector<HalfspaceRow> rows;
};

/// Union of a_i^T x >= l_i (the closure of the outside of PolytopeIn with the
/// same rows).
struct PolytopeOut {
  std::vector<HalfspaceRow> rows;
};

/// {x : A (x - center) in inner}.
///
/// For rectangle inner sets A may carry a positive row scaling (A = D Q with Q
/// orthogonal), which maps the square onto a rotated box. Otherwise A must be
/// orthogonal.
struct Transformed {
  std::shared_ptr<const ProjectionSet> inner;
  Matrix transform;
  Vector center;
  // Derived at construction: transform = diag(row_scale) * rotation.
  Matrix rotation;
  Vector row_scale;
};

/// Cartesian product of consecutive segments.
struct Product {
  std::vector<std::shared_ptr<const ProjectionSet>> parts;
  std::vector<Index> part_dims;
};

/// {x : x = target}.
struct Point {
  Vector target;
};

using SetVariant = std::variant<Bounds, HyperplaneSlab, QuadricAnnulus, SecondOrderCone,
                                RectangleIn, RectangleOut, PolytopeIn, PolytopeOut,
                                Transformed, Product, Point>;

class ProjectionSet {
 public:
  static ProjectionSet bounds(Vector lower, Vector upper);
  /// Bounds with every entry unbounded, i.e. R^n.
  static ProjectionSet unbounded(Index dim);
  static ProjectionSet box(Index dim, double lower, double upper);
  static ProjectionSet slab(Vector normal, std::optional<double> lower,
                            std::optional<double> upper);
  static ProjectionSet annulus(Vector center, double lower, double upper);
  /// Convenience: inner_radius <= ||x - c|| <= outer_radius.
  static ProjectionSet annulus_radii(Vector center, double inner_radius,
                                     double outer_radius);
  static ProjectionSet second_order_cone();
  static ProjectionSet rectangle_in(double halfwidth);
  static ProjectionSet rectangle_out(double halfwidth);
  static ProjectionSet polytope_in(std::vector<HalfspaceRow> rows);
  static ProjectionSet polytope_out(std::vector<HalfspaceRow> rows);
  static ProjectionSet transformed(ProjectionSet inner, Matrix transform, Vector center);
  static ProjectionSet product(std::vector<ProjectionSet> parts, std::vector<Index> dims);
  /// `count` copies of `part`, each of dimension `dim`.
  static ProjectionSet repeated(const ProjectionSet &part, Index dim, Index count);
  static ProjectionSet point(Vector target);

  /// A 2D rectangle of the given length (along the rotated x axis) and width,
  /// rotated by `angle` and centered at `center`.
  static ProjectionSet rectangle2d(const Eigen::Vector2d &center, double length,
                                   double width, double angle, bool inside);

  const SetVariant &variant() const { return set_; }

  template <typename T>
  const T *get_if() const {
    return std::get_if<T>(&set_);
  }

 private:
  explicit ProjectionSet(SetVariant set) : set_(std::move(set)) {}
  SetVariant set_;
};

/// Diagnostics from a projection call.
struct ProjectionInfo {
  /// The projection hit an undefined point of the closed form (e.g. the
  /// center of a quadric shell) and a deterministic fallback was returned.
  bool degenerate = false;
};

inline constexpr double kDefaultMembershipTol = 1e-9;

/// Fixed ambient dimension, or nullopt for dimension-agnostic sets (cone,
/// rectangles).
std::optional<Index> ambient_dim(const ProjectionSet &set);

/// Whether the set is convex. Nonconvex sets only guarantee that project()
/// returns some minimizer.
bool is_convex(const ProjectionSet &set);

Vector project(const ProjectionSet &set, const Vector &x0, ProjectionInfo *info = nullptr);

bool contains(const ProjectionSet &set, const Vector &x, double tol = kDefaultMembershipTol);

/// Projection onto the union of halfspaces a_i^T x >= l_i: the nearest single
/// halfspace wins, ties go to the lowest row index. Points already outside are
/// returned unchanged.
Vector project_polytope_out(const std::vector<HalfspaceRow> &rows, const Vector &x0);

/// Exact projection onto {a_i^T x <= u_i} by a dual active-set method
/// (Goldfarb-Idnani specialised to the identity Hessian). Throws
/// std::runtime_error when the polytope is empty.
Vector project_polytope_in(const std::vector<HalfspaceRow> &rows, const Vector &x0);

}  // namespace alspg
