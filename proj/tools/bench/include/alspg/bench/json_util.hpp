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

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace alspg::bench {

using json = nlohmann::json;

/// Input that fails schema validation. `path` is a JSON pointer into the
/// offending document ("" for the root).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string &message)
      : std::runtime_error((path.empty() ? std::string("/") : path) + ": " + message),
        path_(std::move(path)),
        message_(message) {}
  const std::string &path() const { return path_; }
  const std::string &message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// Reads the members of one JSON object and rejects any member that was not
/// asked for once finish() is called.
class Fields {
 public:
  Fields(const json &j, std::string path);

  const std::string &path() const { return path_; }
  std::string child(const std::string &key) const { return path_ + "/" + key; }
  bool has(const std::string &key) const;

  const json &required(const std::string &key);
  const json *optional(const std::string &key);

  double number(const std::string &key);
  double number(const std::string &key, double fallback);
  std::int64_t integer(const std::string &key);
  std::int64_t integer(const std::string &key, std::int64_t fallback);
  bool boolean(const std::string &key, bool fallback);
  std::string string(const std::string &key);
  std::string string(const std::string &key, const std::string &fallback);
  Vector vector(const std::string &key);
  std::optional<Vector> optional_vector(const std::string &key);

  void finish() const;

 private:
  const json &j_;
  std::string path_;
  std::set<std::string> seen_;
};

double as_number(const json &j, const std::string &path);
std::int64_t as_integer(const json &j, const std::string &path);
/// null entries read as +infinity when `null_as` says so; otherwise they are
/// rejected.
Vector as_vector(const json &j, const std::string &path, std::optional<double> null_as = std::nullopt);
/// Row-major nested arrays.
Matrix as_matrix(const json &j, const std::string &path);

/// Infinite entries serialize as null.
json to_json(const Vector &v);
json to_json(const Matrix &m);

}  // namespace alspg::bench
