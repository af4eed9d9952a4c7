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

#include "alspg/bench/config.hpp"

#include <filesystem>
#include <string>

namespace alspg::bench {

/// Process exit codes shared by every command.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitValidation = 2,
  kExitNonconverged = 3,
};

struct RunOutcome {
  json record;
  bool success = false;
};

/// Builds the problem described by the config, solves it and returns the
/// result record (digest included).
RunOutcome run_experiment(const ProblemConfig &config);

/// Lowercase hex SHA-256 of the input.
std::string sha256_hex(const std::string &data);

/// Copy of a record without wall-time fields (any key named wall_time or
/// ending in _time) and without its digest.
json strip_timing(const json &record);

/// SHA-256 of the canonical (sorted-key, compact) dump of strip_timing(record).
std::string record_digest(const json &record);

/// SHA-256 of the canonical dump of the validated config document.
std::string config_digest(const ProblemConfig &config);

json environment_stamp();

/// One JSON object per line.
void write_records(const std::filesystem::path &path, const std::vector<json> &records);

}  // namespace alspg::bench
