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

#include "alspg/geomproj.hpp"
#include "alspg/report.hpp"

#include <chrono>
#include <deque>
#include <functional>
#include <optional>

namespace alspg {

using Clock = std::chrono::steady_clock;

struct SmoothFunction {
  std::function<double(const Vector &)> value;
  std::function<Vector(const Vector &)> gradient;
};

/// Snapshot handed to SpgOptions::observer after every accepted step.
struct SpgIterate {
  int iteration = 0;
  const Vector *x = nullptr;         // x_k
  const Vector *gradient = nullptr;  // grad f(x_k)
  const Vector *direction = nullptr;
  double f = 0.0;      // f(x_k)
  double f_max = 0.0;  // reference value of the nonmonotone test
  double f_next = 0.0;
  double slope = 0.0;  // grad f(x_k)^T d_k
  double alpha = 0.0;
  double gamma = 0.0;  // stepsize used for d_k
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma_next = 0.0;
};

struct SpgOptions {
  double epsilon = 1e-5;
  int max_iters = 5000;
  int memory = 10;
  double beta = 1e-4;
  double gamma_min = 1e-10;
  double gamma_max = 1e10;
  /// Probe length for the initial stepsize; derived from x0 and grad f(x0)
  /// when unset.
  std::optional<double> gamma_small;
  /// Skip the probe and start from this stepsize (warm start).
  std::optional<double> initial_gamma;
  double alpha_min = 1e-12;
  bool record_iterates = false;
  std::optional<Clock::time_point> deadline;
  std::function<void(const SpgIterate &)> observer;

  void validate() const;
};

struct SpgResult {
  Vector x;
  double f = 0.0;
  /// Spectral stepsize after the last update; feed back as initial_gamma to
  /// warm start a follow-up solve.
  double gamma = 1.0;
  /// Final unit-step projected-gradient residual.
  double residual = 0.0;
  SolveReport report;
};

/// Bounded history of the last M objective values.
class ObjectiveHistory {
 public:
  explicit ObjectiveHistory(int capacity);
  void push(double f);
  double max() const;
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

 private:
  std::size_t capacity_;
  std::deque<double> values_;
};

enum class LineSearchStatus { Accepted, NotDescent, Stagnation, CallbackFailure };

struct LineSearchResult {
  LineSearchStatus status = LineSearchStatus::Accepted;
  double alpha = 0.0;
  double f_trial = 0.0;
  Vector x_trial;
  int evaluations = 0;
};

/// Nonmonotone Armijo search along d from x, with quadratic-interpolation
/// backtracking safeguarded to [0.1, 0.9] and halving otherwise. `slope` is
/// grad f(x)^T d and f_x the objective at x.
LineSearchResult nonmonotone_linesearch(const std::function<double(const Vector &)> &f,
                                        const Vector &x, const Vector &d, double slope,
                                        double f_x, const ObjectiveHistory &history,
                                        double beta = 1e-4, double alpha_min = 1e-12);

struct SpectralStep {
  double gamma = 1.0;
  double gamma1 = 0.0;  // s^T s / s^T y
  double gamma2 = 0.0;  // s^T y / y^T y
};

/// Alternating Barzilai-Borwein stepsize, clamped to [gamma_min, gamma_max].
/// Nonpositive curvature gives gamma_max; s = 0 keeps gamma_prev.
SpectralStep spectral_stepsize_update(const Vector &s, const Vector &y, double gamma_prev,
                                      const SpgOptions &opts);

/// Stepsize from a short probe along -grad f(x0). Costs one gradient
/// evaluation, added to n_grad. Returns 1 for a zero gradient without probing.
double initial_stepsize(const std::function<Vector(const Vector &)> &grad, const Vector &x0,
                        const Vector &g0, const SpgOptions &opts, long &n_grad);

/// Minimizes f over `set` with spectral projected gradient steps.
SpgResult spg_minimize(const SmoothFunction &f, const ProjectionSet &set, const Vector &x0,
                       const SpgOptions &opts = {});

}  // namespace alspg
