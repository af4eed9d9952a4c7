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

#include "alspg/bench/json_util.hpp"
#include "alspg/geomproj.hpp"

namespace alspg::bench {

/// Builds a set from its descriptor, e.g.
///   {"type": "rectangle", "center": [1, 0], "length": 0.4, "width": 0.2,
///    "angle": 0.3, "inside": false}
/// The descriptor grammar is documented in docs/config-schema.md.
ProjectionSet set_from_json(const json &j, const std::string &path = "");

/// Canonical descriptor of a set. Convenience types (box, ball, rectangle,
/// repeated, ...) come back in their primitive form.
json set_to_json(const ProjectionSet &set);

}  // namespace alspg::bench
