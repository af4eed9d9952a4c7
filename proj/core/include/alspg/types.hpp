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

#include <Eigen/Dense>

#include <limits>
#include <stdexcept>
#include <string>

namespace alspg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raised when vector or matrix sizes do not agree with what an operation
/// expects.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_dim(Index got, Index expected, const char *what) {
  if (got != expected) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace alspg
