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
#include "alspg/bench/json_util.hpp"

#include <cmath>
#include <limits>

namespace alspg::bench {

Fields::Fields(const json &j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ConfigError(path_, "expected an object");
}

bool Fields::has(const std::string &key) const { return j_.contains(key); }

const json &Fields::required(const std::string &key) {
  seen_.insert(key);
  auto it = j_.find(key);
  if (it == j_.end()) throw ConfigError(child(key), "required field is missing");
  return *it;
}

const json *Fields::optional(const std::string &key) {
  seen_.insert(key);
  auto it = j_.find(key);
  return it == j_.end() ? nullptr : &*it;
}

double Fields::number(const std::string &key) { return as_number(required(key), child(key)); }

double Fields::number(const std::string &key, double fallback) {
  const json *v = optional(key);
  return v ? as_number(*v, child(key)) : fallback;
}

std::int64_t Fields::integer(const std::string &key) { return as_integer(required(key), child(key)); }

std::int64_t Fields::integer(const std::string &key, std::int64_t fallback) {
  const json *v = optional(key);
  return v ? as_integer(*v, child(key)) : fallback;
}

bool Fields::boolean(const std::string &key, bool fallback) {
  const json *v = optional(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(child(key), "expected a boolean");
  return v->get<bool>();
}

std::string Fields::string(const std::string &key) {
  const json &v = required(key);
  if (!v.is_string()) throw ConfigError(child(key), "expected a string");
  return v.get<std::string>();
}

std::string Fields::string(const std::string &key, const std::string &fallback) {
  const json *v = optional(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(child(key), "expected a string");
  return v->get<std::string>();
}

Vector Fields::vector(const std::string &key) { return as_vector(required(key), child(key)); }

std::optional<Vector> Fields::optional_vector(const std::string &key) {
  const json *v = optional(key);
  if (!v) return std::nullopt;
  return as_vector(*v, child(key));
}

void Fields::finish() const {
  for (const auto &[key, value] : j_.items()) {
    if (!seen_.contains(key)) throw ConfigError(child(key), "unknown field");
  }
}

double as_number(const json &j, const std::string &path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

std::int64_t as_integer(const json &j, const std::string &path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<std::int64_t>();
}

Vector as_vector(const json &j, const std::string &path, std::optional<double> null_as) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    if (j[i].is_null() && null_as) {
      v[static_cast<Index>(i)] = *null_as;
    } else {
      v[static_cast<Index>(i)] = as_number(j[i], p);
    }
  }
  return v;
}

Matrix as_matrix(const json &j, const std::string &path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of rows");
  const Vector first = as_vector(j[0], path + "/0");
  Matrix m(static_cast<Index>(j.size()), first.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = as_vector(j[r], path + "/" + std::to_string(r));
    if (row.size() != m.cols()) throw ConfigError(path + "/" + std::to_string(r), "ragged matrix row");
    m.row(static_cast<Index>(r)) = row.transpose();
  }
  return m;
}

json to_json(const Vector &v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::isfinite(v[i])) {
      out.push_back(v[i]);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

json to_json(const Matrix &m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

}  // namespace alspg::bench
