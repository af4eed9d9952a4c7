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

#include <string>
#include <string_view>
#include <vector>

namespace alspg {

enum class Termination {
  Converged,
  MaxIters,
  Stagnation,
  CallbackFailure,
  // Wall-clock deadline reached before convergence.
  TimeLimit,
};

std::string_view to_string(Termination t);

/// Shared result record for every solver in the library.
///
/// Counting semantics are identical across solvers: n_f counts objective
/// (merit) evaluations, each of which is one full rollout for optimal-control
/// problems; n_jac counts full linearizations of the problem functions.
struct SolveReport {
  std::vector<Vector> x_trace;
  std::vector<double> f_trace;
  /// One entry per traced iterate; each entry holds one residual per
  /// constraint block.
  std::vector<std::vector<double>> residual_trace;

  long n_f = 0;
  long n_grad = 0;
  long n_jac = 0;
  int iterations = 0;
  double wall_time = 0.0;
  Termination termination = Termination::MaxIters;
  std::string message;

  bool converged() const { return termination == Termination::Converged; }
};

}  // namespace alspg
