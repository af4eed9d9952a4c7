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
#include "alspg/bench/set_json.hpp"

#include <cmath>

namespace alspg::bench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::optional<double> optional_side(Fields &f, const std::string &key) {
  const json *v = f.optional(key);
  if (!v || v->is_null()) return std::nullopt;
  return as_number(*v, f.child(key));
}

std::vector<HalfspaceRow> read_rows(Fields &f) {
  const json &rows = f.required("rows");
  const std::string path = f.child("rows");
  if (!rows.is_array() || rows.empty()) throw ConfigError(path, "expected a nonempty array of rows");
  std::vector<HalfspaceRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Fields r(rows[i], path + "/" + std::to_string(i));
    HalfspaceRow row{r.vector("normal"), r.number("offset")};
    r.finish();
    if (!out.empty() && row.normal.size() != out.front().normal.size()) {
      throw ConfigError(r.child("normal"), "row dimension mismatch");
    }
    out.push_back(std::move(row));
  }
  return out;
}

ProjectionSet build(Fields &f) {
  const std::string type = f.string("type");
  if (type == "bounds") {
    return ProjectionSet::bounds(as_vector(f.required("lower"), f.child("lower"), -kInf),
                                 as_vector(f.required("upper"), f.child("upper"), kInf));
  }
  if (type == "box") {
    const auto dim = f.integer("dim");
    if (dim < 1) throw ConfigError(f.child("dim"), "must be >= 1");
    return ProjectionSet::box(dim, f.number("lower"), f.number("upper"));
  }
  if (type == "unbounded") {
    const auto dim = f.integer("dim");
    if (dim < 1) throw ConfigError(f.child("dim"), "must be >= 1");
    return ProjectionSet::unbounded(dim);
  }
  if (type == "slab") {
    Vector normal = f.vector("normal");
    const auto lower = optional_side(f, "lower");
    const auto upper = optional_side(f, "upper");
    return ProjectionSet::slab(std::move(normal), lower, upper);
  }
  if (type == "halfspace") {
    Vector normal = f.vector("normal");
    return ProjectionSet::slab(std::move(normal), std::nullopt, f.number("offset"));
  }
  if (type == "annulus") {
    Vector center = f.vector("center");
    const double inner = f.number("inner_radius", 0.0);
    const auto outer = optional_side(f, "outer_radius");
    return ProjectionSet::annulus_radii(std::move(center), inner, outer.value_or(kInf));
  }
  if (type == "ball") {
    Vector center = f.vector("center");
    return ProjectionSet::annulus_radii(std::move(center), 0.0, f.number("radius"));
  }
  if (type == "quadric_annulus") {
    Vector center = f.vector("center");
    const double lower = f.number("lower", 0.0);
    const auto upper = optional_side(f, "upper");
    return ProjectionSet::annulus(std::move(center), lower, upper.value_or(kInf));
  }
  if (type == "soc") return ProjectionSet::second_order_cone();
  if (type == "rectangle_in") return ProjectionSet::rectangle_in(f.number("halfwidth"));
  if (type == "rectangle_out") return ProjectionSet::rectangle_out(f.number("halfwidth"));
  if (type == "rectangle") {
    const Vector c = f.vector("center");
    if (c.size() != 2) throw ConfigError(f.child("center"), "expected 2 entries");
    return ProjectionSet::rectangle2d(Eigen::Vector2d(c[0], c[1]), f.number("length"), f.number("width"),
                                      f.number("angle", 0.0), f.boolean("inside", true));
  }
  if (type == "polytope_in") return ProjectionSet::polytope_in(read_rows(f));
  if (type == "polytope_out") return ProjectionSet::polytope_out(read_rows(f));
  if (type == "point") return ProjectionSet::point(f.vector("target"));
  if (type == "transformed") {
    ProjectionSet inner = set_from_json(f.required("inner"), f.child("inner"));
    Matrix a = as_matrix(f.required("transform"), f.child("transform"));
    Vector c = f.vector("center");
    return ProjectionSet::transformed(std::move(inner), std::move(a), std::move(c));
  }
  if (type == "product") {
    const json &parts = f.required("parts");
    const std::string path = f.child("parts");
    if (!parts.is_array() || parts.empty()) throw ConfigError(path, "expected a nonempty array");
    std::vector<ProjectionSet> sets;
    std::vector<Index> dims;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      Fields p(parts[i], path + "/" + std::to_string(i));
      sets.push_back(set_from_json(p.required("set"), p.child("set")));
      dims.push_back(p.integer("dim"));
      p.finish();
    }
    return ProjectionSet::product(std::move(sets), std::move(dims));
  }
  if (type == "repeated") {
    ProjectionSet part = set_from_json(f.required("set"), f.child("set"));
    const auto dim = f.integer("dim");
    const auto count = f.integer("count");
    if (dim < 1 || count < 1) throw ConfigError(f.path(), "dim and count must be >= 1");
    return ProjectionSet::repeated(part, dim, count);
  }
  throw ConfigError(f.child("type"), "unknown set type '" + type + "'");
}

json side(const std::optional<double> &v) { return v ? json(*v) : json(nullptr); }

json rows_json(const std::vector<HalfspaceRow> &rows) {
  json out = json::array();
  for (const auto &r : rows) out.push_back({{"normal", to_json(r.normal)}, {"offset", r.offset}});
  return out;
}

}  // namespace

ProjectionSet set_from_json(const json &j, const std::string &path) {
  Fields f(j, path);
  try {
    ProjectionSet set = build(f);
    f.finish();
    return set;
  } catch (const ConfigError &) {
    throw;
  } catch (const std::exception &e) {
    // Factory validation (dimensions, empty sets, ...).
    throw ConfigError(path, e.what());
  }
}

json set_to_json(const ProjectionSet &set) {
  return std::visit(
      overloaded{
          [](const Bounds &b) -> json {
            // Lower infinities also serialize as null; the reader maps them back.
            return {{"type", "bounds"}, {"lower", to_json(b.lower)}, {"upper", to_json(b.upper)}};
          },
          [](const HyperplaneSlab &s) -> json {
            return {{"type", "slab"}, {"normal", to_json(s.normal)}, {"lower", side(s.lower)}, {"upper", side(s.upper)}};
          },
          [](const QuadricAnnulus &q) -> json {
            return {{"type", "quadric_annulus"},
                    {"center", to_json(q.center)},
                    {"lower", q.lower},
                    {"upper", std::isfinite(q.upper) ? json(q.upper) : json(nullptr)}};
          },
          [](const SecondOrderCone &) -> json { return {{"type", "soc"}}; },
          [](const RectangleIn &r) -> json { return {{"type", "rectangle_in"}, {"halfwidth", r.halfwidth}}; },
          [](const RectangleOut &r) -> json { return {{"type", "rectangle_out"}, {"halfwidth", r.halfwidth}}; },
          [](const PolytopeIn &p) -> json { return {{"type", "polytope_in"}, {"rows", rows_json(p.rows)}}; },
          [](const PolytopeOut &p) -> json { return {{"type", "polytope_out"}, {"rows", rows_json(p.rows)}}; },
          [](const Transformed &t) -> json {
            return {{"type", "transformed"},
                    {"inner", set_to_json(*t.inner)},
                    {"transform", to_json(t.transform)},
                    {"center", to_json(t.center)}};
          },
          [](const Product &p) -> json {
            json parts = json::array();
            for (std::size_t i = 0; i < p.parts.size(); ++i) {
              parts.push_back({{"set", set_to_json(*p.parts[i])}, {"dim", p.part_dims[i]}});
            }
            return {{"type", "product"}, {"parts", parts}};
          },
          [](const Point &p) -> json { return {{"type", "point"}, {"target", to_json(p.target)}}; },
      },
      set.variant());
}

}  // namespace alspg::bench
