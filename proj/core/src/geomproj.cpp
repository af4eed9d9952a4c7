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
#include "alspg/geomproj.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace alspg {

namespace {

constexpr double kOrthogonalityTol = 1e-9;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_rows(const std::vector<HalfspaceRow> &rows, const char *what) {
  if (rows.empty()) throw std::invalid_argument(std::string(what) + ": no rows");
  const Index n = rows.front().normal.size();
  for (const auto &row : rows) {
    require_dim(row.normal.size(), n, what);
    if (!(row.normal.norm() > 0.0)) {
      throw std::invalid_argument(std::string(what) + ": zero row normal");
    }
  }
}

bool is_rectangle(const ProjectionSet &set) {
  return set.get_if<RectangleIn>() != nullptr || set.get_if<RectangleOut>() != nullptr;
}

double sign_or_one(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Box with per-axis half-widths h. The inside projection is clipping.
Vector project_box_in(const Vector &y, const Vector &h) { return y.cwiseMax(-h).cwiseMin(h); }

// Outside of the box: if no coordinate reaches its face, push the coordinate
// closest to its face onto it (lowest index on ties).
Vector project_box_out(const Vector &y, const Vector &h) {
  Index best = -1;
  double best_gap = kInf;
  for (Index i = 0; i < y.size(); ++i) {
    const double gap = h[i] - std::abs(y[i]);
    if (gap <= 0.0) return y;
    if (gap < best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  Vector p = y;
  if (best >= 0) p[best] = h[best] * sign_or_one(y[best]);
  return p;
}

Vector project_soc(const Vector &x) {
  const Index n = x.size();
  if (n == 0) return x;
  const double t = x[n - 1];
  const double znorm = x.head(n - 1).norm();
  if (znorm <= t) return x;
  if (znorm <= -t) return Vector::Zero(n);
  Vector p(n);
  const double scale = 0.5 * (znorm + t);
  p.head(n - 1) = x.head(n - 1) * (scale / znorm);
  p[n - 1] = scale;
  return p;
}

Vector project_quadric(const QuadricAnnulus &q, const Vector &x, ProjectionInfo *info) {
  const Vector d = x - q.center;
  const double r = d.norm();
  const double half_sq = 0.5 * r * r;
  if (half_sq > q.upper) return q.center + d * (std::sqrt(2.0 * q.upper) / r);
  if (half_sq < q.lower) {
    const double radius = std::sqrt(2.0 * q.lower);
    if (r == 0.0) {
      if (info) info->degenerate = true;
      Vector p = q.center;
      p[0] += radius;
      return p;
    }
    return q.center + d * (radius / r);
  }
  return x;
}

Vector project_transformed(const Transformed &t, const Vector &x0, ProjectionInfo *info) {
  const Vector y = t.rotation * (x0 - t.center);
  Vector py;
  if (const auto *in = t.inner->get_if<RectangleIn>()) {
    py = project_box_in(y, (in->halfwidth / t.row_scale.array()).matrix());
  } else if (const auto *out = t.inner->get_if<RectangleOut>()) {
    py = project_box_out(y, (out->halfwidth / t.row_scale.array()).matrix());
  } else {
    py = project(*t.inner, y, info);
  }
  return t.rotation.transpose() * py + t.center;
}

}  // namespace

// --- construction ----------------------------------------------------------

ProjectionSet ProjectionSet::bounds(Vector lower, Vector upper) {
  require_dim(upper.size(), lower.size(), "Bounds upper");
  for (Index i = 0; i < lower.size(); ++i) {
    if (std::isnan(lower[i]) || std::isnan(upper[i]) || lower[i] > upper[i]) {
      throw std::invalid_argument("Bounds: lower must not exceed upper");
    }
  }
  return ProjectionSet(Bounds{std::move(lower), std::move(upper)});
}

ProjectionSet ProjectionSet::unbounded(Index dim) {
  return bounds(Vector::Constant(dim, -kInf), Vector::Constant(dim, kInf));
}

ProjectionSet ProjectionSet::box(Index dim, double lower, double upper) {
  return bounds(Vector::Constant(dim, lower), Vector::Constant(dim, upper));
}

ProjectionSet ProjectionSet::slab(Vector normal, std::optional<double> lower,
                                  std::optional<double> upper) {
  if (!(normal.norm() > 0.0)) throw std::invalid_argument("HyperplaneSlab: zero normal");
  if (lower && upper && *lower > *upper) {
    throw std::invalid_argument("HyperplaneSlab: lower must not exceed upper");
  }
  return ProjectionSet(HyperplaneSlab{std::move(normal), lower, upper});
}

ProjectionSet ProjectionSet::annulus(Vector center, double lower, double upper) {
  if (center.size() == 0) throw DimensionError("QuadricAnnulus: empty center");
  if (!(lower >= 0.0) || !(upper >= lower)) {
    throw std::invalid_argument("QuadricAnnulus: need 0 <= lower <= upper");
  }
  return ProjectionSet(QuadricAnnulus{std::move(center), lower, upper});
}

ProjectionSet ProjectionSet::annulus_radii(Vector center, double inner_radius,
                                           double outer_radius) {
  const double upper = std::isinf(outer_radius) ? kInf : 0.5 * outer_radius * outer_radius;
  return annulus(std::move(center), 0.5 * inner_radius * inner_radius, upper);
}

ProjectionSet ProjectionSet::second_order_cone() { return ProjectionSet(SecondOrderCone{}); }

ProjectionSet ProjectionSet::rectangle_in(double halfwidth) {
  if (!(halfwidth >= 0.0)) throw std::invalid_argument("RectangleIn: negative halfwidth");
  return ProjectionSet(RectangleIn{halfwidth});
}

ProjectionSet ProjectionSet::rectangle_out(double halfwidth) {
  if (!(halfwidth >= 0.0)) throw std::invalid_argument("RectangleOut: negative halfwidth");
  return ProjectionSet(RectangleOut{halfwidth});
}

ProjectionSet ProjectionSet::polytope_in(std::vector<HalfspaceRow> rows) {
  check_rows(rows, "PolytopeIn");
  return ProjectionSet(PolytopeIn{std::move(rows)});
}

ProjectionSet ProjectionSet::polytope_out(std::vector<HalfspaceRow> rows) {
  check_rows(rows, "PolytopeOut");
  return ProjectionSet(PolytopeOut{std::move(rows)});
}

ProjectionSet ProjectionSet::transformed(ProjectionSet inner, Matrix transform, Vector center) {
  const Index n = transform.rows();
  if (transform.cols() != n || n == 0) throw DimensionError("Transformed: matrix must be square");
  require_dim(center.size(), n, "Transformed center");
  if (const auto dim = ambient_dim(inner)) require_dim(*dim, n, "Transformed inner");

  Vector scale = transform.rowwise().norm();
  if ((scale.array() <= 0.0).any()) throw std::invalid_argument("Transformed: singular matrix");
  Matrix rotation = scale.cwiseInverse().asDiagonal() * transform;
  const double err = (rotation * rotation.transpose() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > kOrthogonalityTol) {
    throw std::invalid_argument(
        "Transformed: matrix must have orthogonal rows (diag * orthogonal)");
  }
  if (!is_rectangle(inner) && (scale.array() - 1.0).abs().maxCoeff() > kOrthogonalityTol) {
    throw std::invalid_argument("Transformed: only rectangle sets accept a scaled transform");
  }
  auto inner_ptr = std::make_shared<const ProjectionSet>(std::move(inner));
  return ProjectionSet(Transformed{std::move(inner_ptr), std::move(transform), std::move(center),
                                   std::move(rotation), std::move(scale)});
}

ProjectionSet ProjectionSet::product(std::vector<ProjectionSet> parts, std::vector<Index> dims) {
  if (parts.size() != dims.size()) throw DimensionError("Product: parts/dims size mismatch");
  Product p;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (dims[i] < 0) throw DimensionError("Product: negative part dimension");
    if (const auto d = ambient_dim(parts[i])) require_dim(*d, dims[i], "Product part");
    p.parts.push_back(std::make_shared<const ProjectionSet>(std::move(parts[i])));
  }
  p.part_dims = std::move(dims);
  return ProjectionSet(std::move(p));
}

ProjectionSet ProjectionSet::repeated(const ProjectionSet &part, Index dim, Index count) {
  if (const auto d = ambient_dim(part)) require_dim(*d, dim, "repeated part");
  auto shared = std::make_shared<const ProjectionSet>(part);
  Product p;
  p.parts.assign(static_cast<std::size_t>(count), shared);
  p.part_dims.assign(static_cast<std::size_t>(count), dim);
  return ProjectionSet(std::move(p));
}

ProjectionSet ProjectionSet::point(Vector target) {
  return ProjectionSet(Point{std::move(target)});
}

ProjectionSet ProjectionSet::rectangle2d(const Eigen::Vector2d &center, double length,
                                         double width, double angle, bool inside) {
  if (!(length > 0.0) || !(width > 0.0)) {
    throw std::invalid_argument("rectangle2d: length and width must be positive");
  }
  const Eigen::Matrix2d rot = Eigen::Rotation2Dd(angle).toRotationMatrix();
  Matrix a = Eigen::Vector2d(1.0, length / width).asDiagonal() * rot.transpose();
  auto inner = inside ? rectangle_in(0.5 * length) : rectangle_out(0.5 * length);
  return transformed(std::move(inner), std::move(a), center);
}

// --- queries ---------------------------------------------------------------

std::optional<Index> ambient_dim(const ProjectionSet &set) {
  return std::visit(
      overloaded{
          [](const Bounds &b) -> std::optional<Index> { return b.lower.size(); },
          [](const HyperplaneSlab &s) -> std::optional<Index> { return s.normal.size(); },
          [](const QuadricAnnulus &q) -> std::optional<Index> { return q.center.size(); },
          [](const SecondOrderCone &) -> std::optional<Index> { return std::nullopt; },
          [](const RectangleIn &) -> std::optional<Index> { return std::nullopt; },
          [](const RectangleOut &) -> std::optional<Index> { return std::nullopt; },
          [](const PolytopeIn &p) -> std::optional<Index> { return p.rows.front().normal.size(); },
          [](const PolytopeOut &p) -> std::optional<Index> { return p.rows.front().normal.size(); },
          [](const Transformed &t) -> std::optional<Index> { return t.transform.rows(); },
          [](const Product &p) -> std::optional<Index> {
            return std::accumulate(p.part_dims.begin(), p.part_dims.end(), Index{0});
          },
          [](const Point &p) -> std::optional<Index> { return p.target.size(); },
      },
      set.variant());
}

bool is_convex(const ProjectionSet &set) {
  return std::visit(overloaded{
                        [](const QuadricAnnulus &q) { return q.lower == 0.0; },
                        [](const RectangleOut &) { return false; },
                        [](const PolytopeOut &) { return false; },
                        [](const Transformed &t) { return is_convex(*t.inner); },
                        [](const Product &p) {
                          return std::all_of(p.parts.begin(), p.parts.end(),
                                             [](const auto &s) { return is_convex(*s); });
                        },
                        [](const auto &) { return true; },
                    },
                    set.variant());
}

Vector project(const ProjectionSet &set, const Vector &x0, ProjectionInfo *info) {
  if (const auto dim = ambient_dim(set)) require_dim(x0.size(), *dim, "project");
  return std::visit(
      overloaded{
          [&](const Bounds &b) -> Vector { return x0.cwiseMax(b.lower).cwiseMin(b.upper); },
          [&](const HyperplaneSlab &s) -> Vector {
            const double v = s.normal.dot(x0);
            const double nsq = s.normal.squaredNorm();
            if (s.upper && v > *s.upper) return x0 - s.normal * ((v - *s.upper) / nsq);
            if (s.lower && v < *s.lower) return x0 - s.normal * ((v - *s.lower) / nsq);
            return x0;
          },
          [&](const QuadricAnnulus &q) -> Vector { return project_quadric(q, x0, info); },
          [&](const SecondOrderCone &) -> Vector { return project_soc(x0); },
          [&](const RectangleIn &r) -> Vector {
            return project_box_in(x0, Vector::Constant(x0.size(), r.halfwidth));
          },
          [&](const RectangleOut &r) -> Vector {
            return project_box_out(x0, Vector::Constant(x0.size(), r.halfwidth));
          },
          [&](const PolytopeIn &p) -> Vector { return project_polytope_in(p.rows, x0); },
          [&](const PolytopeOut &p) -> Vector { return project_polytope_out(p.rows, x0); },
          [&](const Transformed &t) -> Vector { return project_transformed(t, x0, info); },
          [&](const Product &p) -> Vector {
            Vector out(x0.size());
            Index offset = 0;
            for (std::size_t i = 0; i < p.parts.size(); ++i) {
              const Index d = p.part_dims[i];
              out.segment(offset, d) = project(*p.parts[i], x0.segment(offset, d), info);
              offset += d;
            }
            return out;
          },
          [&](const Point &p) -> Vector { return p.target; },
      },
      set.variant());
}

bool contains(const ProjectionSet &set, const Vector &x, double tol) {
  if (const auto dim = ambient_dim(set)) require_dim(x.size(), *dim, "contains");
  return std::visit(
      overloaded{
          [&](const Bounds &b) {
            return ((x - b.lower).array() >= -tol).all() && ((b.upper - x).array() >= -tol).all();
          },
          [&](const HyperplaneSlab &s) {
            const double v = s.normal.dot(x);
            return (!s.lower || v >= *s.lower - tol) && (!s.upper || v <= *s.upper + tol);
          },
          [&](const QuadricAnnulus &q) {
            const double h = 0.5 * (x - q.center).squaredNorm();
            return h >= q.lower - tol && h <= q.upper + tol;
          },
          [&](const SecondOrderCone &) {
            const Index n = x.size();
            if (n == 0) return true;
            return x.head(n - 1).norm() <= x[n - 1] + tol;
          },
          [&](const RectangleIn &r) {
            return x.size() == 0 || x.lpNorm<Eigen::Infinity>() <= r.halfwidth + tol;
          },
          [&](const RectangleOut &r) {
            return x.size() > 0 && x.lpNorm<Eigen::Infinity>() >= r.halfwidth - tol;
          },
          [&](const PolytopeIn &p) {
            return std::all_of(p.rows.begin(), p.rows.end(), [&](const HalfspaceRow &row) {
              return row.normal.dot(x) <= row.offset + tol;
            });
          },
          [&](const PolytopeOut &p) {
            return std::any_of(p.rows.begin(), p.rows.end(), [&](const HalfspaceRow &row) {
              return row.normal.dot(x) >= row.offset - tol;
            });
          },
          [&](const Transformed &t) { return contains(*t.inner, t.transform * (x - t.center), tol); },
          [&](const Product &p) {
            Index offset = 0;
            for (std::size_t i = 0; i < p.parts.size(); ++i) {
              const Index d = p.part_dims[i];
              if (!contains(*p.parts[i], x.segment(offset, d), tol)) return false;
              offset += d;
            }
            return true;
          },
          [&](const Point &p) {
            return x.size() == 0 || (x - p.target).lpNorm<Eigen::Infinity>() <= tol;
          },
      },
      set.variant());
}

Vector project_polytope_out(const std::vector<HalfspaceRow> &rows, const Vector &x0) {
  Index best = -1;
  double best_dist = kInf;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_dim(rows[i].normal.size(), x0.size(), "project_polytope_out");
    const double slack = rows[i].offset - rows[i].normal.dot(x0);
    if (slack <= 0.0) return x0;
    const double dist = slack / rows[i].normal.norm();
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<Index>(i);
    }
  }
  if (best < 0) return x0;
  const auto &row = rows[static_cast<std::size_t>(best)];
  return x0 + row.normal * ((row.offset - row.normal.dot(x0)) / row.normal.squaredNorm());
}

Vector project_polytope_in(const std::vector<HalfspaceRow> &rows, const Vector &x0) {
  const Index n = x0.size();
  const Index m = static_cast<Index>(rows.size());
  Matrix a(m, n);
  Vector u(m);
  for (Index i = 0; i < m; ++i) {
    require_dim(rows[static_cast<std::size_t>(i)].normal.size(), n, "project_polytope_in");
    a.row(i) = rows[static_cast<std::size_t>(i)].normal.transpose();
    u[i] = rows[static_cast<std::size_t>(i)].offset;
  }
  const double scale = 1.0 + x0.lpNorm<Eigen::Infinity>() + u.lpNorm<Eigen::Infinity>();
  const double viol_tol = 1e-13 * scale;

  // Invariant: x = x0 - A_J^T mu_J, A_J x = u_J, mu_J >= 0.
  Vector x = x0;
  std::vector<Index> active;
  std::vector<double> mu;

  const int max_outer = 10 * static_cast<int>(m + n) + 10;
  for (int outer = 0; outer < max_outer; ++outer) {
    Index p = -1;
    double worst = viol_tol;
    for (Index i = 0; i < m; ++i) {
      const double v = (a.row(i).dot(x) - u[i]) / a.row(i).norm();
      if (v > worst) {
        worst = v;
        p = i;
      }
    }
    if (p < 0) return x;

    double mu_p = 0.0;
    for (int inner = 0; inner < max_outer; ++inner) {
      const Index k = static_cast<Index>(active.size());
      const Vector ap = a.row(p).transpose();
      Vector r = Vector::Zero(k);
      Vector dir = ap;  // P a_p, the nullspace component of a_p
      if (k > 0) {
        Matrix aj(k, n);
        for (Index j = 0; j < k; ++j) aj.row(j) = a.row(active[static_cast<std::size_t>(j)]);
        const Matrix gram = aj * aj.transpose();
        r = gram.ldlt().solve(aj * ap);
        dir = ap - aj.transpose() * r;
      }
      const double curv = ap.dot(dir);
      double t_full = kInf;
      if (curv > 1e-14 * ap.squaredNorm()) t_full = (ap.dot(x) - u[p]) / curv;

      double t_part = kInf;
      Index drop = -1;
      for (Index j = 0; j < k; ++j) {
        if (r[j] > 1e-14) {
          const double t = mu[static_cast<std::size_t>(j)] / r[j];
          if (t < t_part) {
            t_part = t;
            drop = j;
          }
        }
      }
      if (std::isinf(t_full) && std::isinf(t_part)) {
        throw std::runtime_error("project_polytope_in: polytope is empty");
      }
      const double t = std::min(t_full, t_part);
      x -= t * dir;
      for (Index j = 0; j < k; ++j) mu[static_cast<std::size_t>(j)] -= t * r[j];
      mu_p += t;
      if (t_full <= t_part) {
        active.push_back(p);
        mu.push_back(mu_p);
        break;
      }
      active.erase(active.begin() + drop);
      mu.erase(mu.begin() + drop);
    }
  }
  throw std::runtime_error("project_polytope_in: active-set iteration limit reached");
}

}  // namespace alspg
