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
#include "alspg/spg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alspg {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIters: return "max_iters";
    case Termination::Stagnation: return "stagnation";
    case Termination::CallbackFailure: return "callback_failure";
    case Termination::TimeLimit: return "time_limit";
  }
  return "unknown";
}

void SpgOptions::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("SpgOptions: epsilon must be positive");
  if (memory < 1) throw std::invalid_argument("SpgOptions: memory must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("SpgOptions: beta in (0, 1)");
  if (!(gamma_min > 0.0 && gamma_min <= gamma_max)) {
    throw std::invalid_argument("SpgOptions: need 0 < gamma_min <= gamma_max");
  }
  if (gamma_small && !(*gamma_small > 0.0)) {
    throw std::invalid_argument("SpgOptions: gamma_small must be positive");
  }
}

ObjectiveHistory::ObjectiveHistory(int capacity)
    : capacity_(static_cast<std::size_t>(std::max(capacity, 1))) {}

void ObjectiveHistory::push(double f) {
  values_.push_back(f);
  while (values_.size() > capacity_) values_.pop_front();
}

double ObjectiveHistory::max() const {
  if (values_.empty()) throw std::logic_error("ObjectiveHistory: empty");
  return *std::max_element(values_.begin(), values_.end());
}

LineSearchResult nonmonotone_linesearch(const std::function<double(const Vector &)> &f,
                                        const Vector &x, const Vector &d, double slope,
                                        double f_x, const ObjectiveHistory &history,
                                        double beta, double alpha_min) {
  LineSearchResult out;
  if (!(slope < 0.0)) {
    out.status = LineSearchStatus::NotDescent;
    return out;
  }
  const double f_max = history.max();
  double alpha = 1.0;
  while (true) {
    out.x_trial = x + alpha * d;
    const double ft = f(out.x_trial);
    ++out.evaluations;
    if (std::isnan(ft)) {
      out.status = LineSearchStatus::CallbackFailure;
      out.alpha = alpha;
      out.f_trial = ft;
      return out;
    }
    if (ft <= f_max + alpha * beta * slope) {
      out.alpha = alpha;
      out.f_trial = ft;
      return out;
    }
    // +inf trial values (e.g. a diverging rollout) are rejected like any other.
    const double trial = std::isfinite(ft)
                             ? -0.5 * alpha * alpha * slope / (ft - f_x - alpha * slope)
                             : -1.0;
    if (trial >= 0.1 && trial <= 0.9) {
      alpha = trial;
    } else {
      alpha *= 0.5;
    }
    if (alpha < alpha_min) {
      out.status = LineSearchStatus::Stagnation;
      out.alpha = alpha;
      out.f_trial = ft;
      return out;
    }
  }
}

SpectralStep spectral_stepsize_update(const Vector &s, const Vector &y, double gamma_prev,
                                      const SpgOptions &opts) {
  SpectralStep out;
  const double ss = s.squaredNorm();
  if (ss == 0.0) {
    out.gamma = std::clamp(gamma_prev, opts.gamma_min, opts.gamma_max);
    return out;
  }
  const double sy = s.dot(y);
  if (!(sy > 0.0)) {
    out.gamma = opts.gamma_max;
    return out;
  }
  out.gamma1 = ss / sy;
  out.gamma2 = sy / y.squaredNorm();
  const double raw = out.gamma1 < 2.0 * out.gamma2 ? out.gamma2 : out.gamma1 - 0.5 * out.gamma2;
  out.gamma = std::isfinite(raw) ? std::clamp(raw, opts.gamma_min, opts.gamma_max) : opts.gamma_max;
  return out;
}

double initial_stepsize(const std::function<Vector(const Vector &)> &grad, const Vector &x0,
                        const Vector &g0, const SpgOptions &opts, long &n_grad) {
  const double gnorm = g0.lpNorm<Eigen::Infinity>();
  if (gnorm == 0.0) return 1.0;
  const double small = opts.gamma_small.value_or(
      1e-4 * std::max(1.0, x0.lpNorm<Eigen::Infinity>()) / std::max(1.0, gnorm));
  const Vector probe = x0 - small * g0;
  const Vector g_probe = grad(probe);
  ++n_grad;
  if (!g_probe.allFinite()) return std::clamp(1.0, opts.gamma_min, opts.gamma_max);
  return spectral_stepsize_update(probe - x0, g_probe - g0, 1.0, opts).gamma;
}

SpgResult spg_minimize(const SmoothFunction &f, const ProjectionSet &set, const Vector &x0,
                       const SpgOptions &opts) {
  opts.validate();
  const auto t_start = Clock::now();
  SpgResult result;
  SolveReport &rep = result.report;
  const bool convex = is_convex(set);

  auto finish = [&](Termination term, std::string msg = {}) {
    rep.termination = term;
    rep.message = std::move(msg);
    rep.wall_time = std::chrono::duration<double>(Clock::now() - t_start).count();
    return result;
  };

  Vector x = contains(set, x0, 0.0) ? x0 : project(set, x0);
  double fx = f.value(x);
  ++rep.n_f;
  Vector g = f.gradient(x);
  ++rep.n_grad;
  result.x = x;
  result.f = fx;
  if (!std::isfinite(fx) || !g.allFinite()) {
    return finish(Termination::CallbackFailure, "non-finite objective or gradient at start");
  }

  double gamma = opts.initial_gamma
                     ? std::clamp(*opts.initial_gamma, opts.gamma_min, opts.gamma_max)
                     : initial_stepsize(f.gradient, x, g, opts, rep.n_grad);

  ObjectiveHistory history(opts.memory);
  history.push(fx);
  std::optional<double> last_accepted_gamma;
  rep.f_trace.push_back(fx);
  if (opts.record_iterates) rep.x_trace.push_back(x);

  for (int k = 0;; ++k) {
    result.x = x;
    result.f = fx;
    result.gamma = gamma;
    result.residual = (project(set, x - g) - x).lpNorm<Eigen::Infinity>();
    if (result.residual <= opts.epsilon) return finish(Termination::Converged);
    if (k >= opts.max_iters) return finish(Termination::MaxIters);
    if (opts.deadline && Clock::now() >= *opts.deadline) return finish(Termination::TimeLimit);

    Vector d;
    double slope = 0.0;
    double f_max = 0.0;
    LineSearchResult ls;
    for (bool retried = false;; retried = true) {
      d = project(set, x - gamma * g) - x;
      slope = g.dot(d);
      // Only nonconvex sets (or round-off) yield ascent directions; shorten
      // the spectral step until the projected step descends.
      while (!(slope < 0.0) && gamma > opts.gamma_min) {
        gamma = std::max(opts.gamma_min, 0.1 * gamma);
        d = project(set, x - gamma * g) - x;
        slope = g.dot(d);
      }
      if (!(slope < 0.0)) return finish(Termination::Stagnation, "no descent direction");

      f_max = history.max();
      ls = nonmonotone_linesearch(f.value, x, d, slope, fx, history, opts.beta, opts.alpha_min);
      rep.n_f += ls.evaluations;
      if (ls.status == LineSearchStatus::CallbackFailure) {
        return finish(Termination::CallbackFailure, "NaN objective in line search");
      }
      if (ls.status == LineSearchStatus::Accepted) break;
      // A curvature reset to gamma_max can overshoot by more than the halving
      // budget covers on unbounded sets. Retry once with the last stepsize
      // that produced an accepted step.
      if (retried || !last_accepted_gamma || !(*last_accepted_gamma < gamma)) {
        return finish(Termination::Stagnation, "line search step underflow");
      }
      gamma = *last_accepted_gamma;
    }
    last_accepted_gamma = gamma;

    Vector x_next = std::move(ls.x_trial);
    double f_next = ls.f_trial;
    if (!convex && ls.alpha < 1.0) {
      Vector reprojected = project(set, x_next);
      if (reprojected != x_next) {
        x_next = std::move(reprojected);
        f_next = f.value(x_next);
        ++rep.n_f;
      }
    }
    Vector g_next = f.gradient(x_next);
    ++rep.n_grad;
    if (!std::isfinite(f_next) || !g_next.allFinite()) {
      return finish(Termination::CallbackFailure, "non-finite objective or gradient");
    }

    const SpectralStep step = spectral_stepsize_update(x_next - x, g_next - g, gamma, opts);
    if (opts.observer) {
      SpgIterate it;
      it.iteration = k;
      it.x = &x;
      it.gradient = &g;
      it.direction = &d;
      it.f = fx;
      it.f_max = f_max;
      it.f_next = f_next;
      it.slope = slope;
      it.alpha = ls.alpha;
      it.gamma = gamma;
      it.gamma1 = step.gamma1;
      it.gamma2 = step.gamma2;
      it.gamma_next = step.gamma;
      opts.observer(it);
    }

    x = std::move(x_next);
    g = std::move(g_next);
    fx = f_next;
    gamma = step.gamma;
    history.push(fx);
    ++rep.iterations;
    rep.f_trace.push_back(fx);
    if (opts.record_iterates) rep.x_trace.push_back(x);
  }
}

}  // namespace alspg
