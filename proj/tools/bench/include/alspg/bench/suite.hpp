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

#include "alspg/bench/experiment.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace alspg::bench {

struct SuiteMember {
  std::filesystem::path config;
  std::string label;
  Overrides overrides;
};

struct Suite {
  std::string name;
  std::vector<SuiteMember> members;
};

/// Reads a suite file. Member config paths resolve against the suite file's
/// directory; a member "seeds" list expands into one member per seed.
Suite load_suite(const std::filesystem::path &path);

struct SuiteOptions {
  int jobs = 1;
  /// Applied to members that do not set the field themselves.
  Overrides defaults;
};

struct SuiteResult {
  /// Suite order, independent of scheduling.
  std::vector<json> records;
  json summary;
  int exit_code = kExitOk;
};

SuiteResult run_suite(const Suite &suite, const SuiteOptions &opts = {});

/// Mean and sample standard deviation of each metric per label. A pure
/// function of the records.
json summarize(const std::string &suite_name, const std::vector<json> &records);

/// Human-readable table of a summary.
std::string format_summary(const json &summary);

}  // namespace alspg::bench
