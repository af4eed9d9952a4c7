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
#include "alspg/bench/experiment.hpp"

#include "alspg/mpc.hpp"
#include "alspg/models/chance.hpp"
#include "alspg/models/double_integrator.hpp"
#include "alspg/models/ik.hpp"
#include "alspg/models/planar_arm.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#ifndef ALSPG_VERSION
#define ALSPG_VERSION "unknown"
#endif
#ifndef ALSPG_BUILD_TYPE
#define ALSPG_BUILD_TYPE "unknown"
#endif

namespace alspg::bench {

namespace {

std::shared_ptr<const DynamicsModel> make_model(const ModelSpec &m) {
  if (m.name == "arm_velocity") return std::make_shared<models::ArmVelocityModel>(m.lengths.size(), m.dt);
  if (m.name == "double_integrator") return std::make_shared<models::DoubleIntegrator2D>(m.dt);
  if (m.name == "pusher_slider") return std::make_shared<models::PusherSlider>(m.pusher);
  throw std::logic_error("make_model: not a dynamics model: " + m.name);
}

std::vector<Index> steps_1_to(Index horizon) {
  std::vector<Index> out;
  for (Index t = 1; t <= horizon; ++t) out.push_back(t);
  return out;
}

OcCost build_cost(const ProblemConfig &cfg, int step) {
  OcCost cost(Matrix(cfg.cost.control_weight.asDiagonal()));
  const Index T = cfg.horizon;
  if (cfg.cost.running) {
    cost.add_state_term(quadratic_state_term(Matrix(cfg.cost.running->weight.asDiagonal()),
                                             cfg.cost.running->goal, steps_1_to(T)));
  }
  if (cfg.cost.terminal) {
    cost.add_state_term(quadratic_state_term(Matrix(cfg.cost.terminal->weight.asDiagonal()),
                                             cfg.cost.terminal->goal, {T}));
  }
  if (cfg.cost.reach) {
    const auto &r = *cfg.cost.reach;
    cost.add_state_term(models::arm_reach_term(make_arm(cfg.model), r.target_at(step), r.weight,
                                               r.terminal_only ? std::vector<Index>{T} : steps_1_to(T)));
  }
  return cost;
}

ProjectionSet control_set(const ProblemConfig &cfg) {
  const Index m = cfg.initial_control.size();
  if (!cfg.control_bounds) return ProjectionSet::unbounded(m * cfg.horizon);
  return ProjectionSet::repeated(ProjectionSet::bounds(cfg.control_bounds->first, cfg.control_bounds->second), m,
                                 cfg.horizon);
}

OcProblem build_problem(const ProblemConfig &cfg, const std::shared_ptr<const DynamicsModel> &model,
                        const Vector &x0, int step) {
  std::vector<StateConstraint> state_constraints;
  std::vector<TrajectoryMap> maps;
  const std::vector<Index> all = steps_1_to(cfg.horizon);
  for (const auto &c : cfg.constraints) {
    const std::vector<Index> ts = c.timesteps.empty() ? all : c.timesteps;
    if (c.on == ConstraintSpec::On::State) {
      StateSelector sel;
      sel.indices = c.indices;
      sel.timesteps = ts;
      state_constraints.push_back({c.name, std::move(sel), c.set});
    } else {
      maps.push_back(models::arm_task_map(make_arm(cfg.model), ts, c.set, c.name));
    }
  }
  for (const auto &ob : cfg.obstacles) {
    const models::RectObstacle grown = ob.inflated(cfg.obstacle_margin);
    if (cfg.solver == SolverKind::AlspgNoProj) {
      maps.push_back(models::obstacle_depth_map(grown, cfg.horizon));
    } else {
      state_constraints.push_back(models::obstacle_position_constraint(grown, cfg.horizon));
    }
  }
  return build_oc_problem(model, x0, build_cost(cfg, step), control_set(cfg), std::move(state_constraints),
                          std::move(maps), cfg.horizon);
}

json report_json(const SolveReport &rep) {
  return {{"termination", std::string(to_string(rep.termination))},
          {"message", rep.message},
          {"n_f", rep.n_f},
          {"n_grad", rep.n_grad},
          {"n_jac", rep.n_jac},
          {"iterations", rep.iterations},
          {"wall_time", rep.wall_time}};
}

json traces_json(const SolveReport &rep) {
  json residual = json::array();
  for (const auto &r : rep.residual_trace) residual.push_back(r);
  return {{"objective", rep.f_trace}, {"residual", residual}};
}

json obstacle_json(const models::RectObstacle &ob) {
  return {{"center", {ob.center.x(), ob.center.y()}},
          {"length", ob.length},
          {"width", ob.width},
          {"angle", ob.angle}};
}

// Constraint residual of a measured state, max over the configured blocks.
double state_residual(const ProblemConfig &cfg, const Vector &x) {
  double worst = 0.0;
  for (const auto &c : cfg.constraints) {
    Vector slice;
    if (c.on == ConstraintSpec::On::State) {
      slice.resize(static_cast<Index>(c.indices.size()));
      for (std::size_t i = 0; i < c.indices.size(); ++i) slice[static_cast<Index>(i)] = x[c.indices[i]];
    } else {
      slice = make_arm(cfg.model).fk(x);
    }
    worst = std::max(worst, (slice - project(c.set, slice)).lpNorm<Eigen::Infinity>());
  }
  return worst;
}

json goal_json(const ProblemConfig &cfg, const Vector &x_final, bool *reached) {
  const Vector &goal = cfg.cost.terminal->goal;
  const double pos = (x_final.head(2) - goal.head(2)).norm();
  json out = {{"position_error", pos}};
  bool ok = pos <= cfg.goal_tolerance->position;
  if (cfg.goal_tolerance->angle) {
    const double ang = std::abs(models::wrap_angle(x_final[2] - goal[2]));
    out["angle_error"] = ang;
    ok = ok && ang <= *cfg.goal_tolerance->angle;
  }
  out["reached"] = ok;
  if (reached) *reached = ok;
  return out;
}

json states_json(const Trajectory &traj) {
  json out = json::array();
  for (Index t = 0; t <= traj.horizon; ++t) out.push_back(to_json(Vector(traj.state(t))));
  return out;
}

RunOutcome run_planning(const ProblemConfig &cfg, json &record) {
  const auto model = make_model(cfg.model);
  OcProblem oc = build_problem(cfg, model, cfg.x0, 0);
  const Vector u0 = cfg.initial_control.replicate(cfg.horizon, 1);

  Vector u;
  SolveReport rep;
  switch (cfg.solver) {
    case SolverKind::Alspg:
    case SolverKind::AlspgNoProj: {
      AlspgOptions opts = cfg.options.alspg;
      opts.record_iterates = false;
      AlspgResult res = alspg_solve(oc.nlp(), u0, opts);
      u = std::move(res.x);
      rep = std::move(res.report);
      record["outer_iterations"] = res.outer_iterations;
      break;
    }
    case SolverKind::Spg: {
      SpgOptions opts = cfg.options.spg;
      opts.record_iterates = false;
      SpgResult res = spg_minimize(oc.nlp().objective, oc.nlp().domain, u0, opts);
      u = std::move(res.x);
      rep = std::move(res.report);
      // Every shooting gradient is one full linearization.
      rep.n_jac = rep.n_grad;
      break;
    }
    case SolverKind::Ilqr: {
      IlqrOptions opts = cfg.options.ilqr;
      opts.record_iterates = false;
      IlqrResult res = ilqr_solve(*model, cfg.x0, oc.cost(), u0, opts);
      u = std::move(res.trajectory.controls);
      rep = std::move(res.report);
      break;
    }
  }

  const Trajectory traj = oc.trajectory(u);
  json result;
  result["objective"] = oc.cost().value(traj);
  result["final_state"] = to_json(Vector(traj.state(cfg.horizon)));
  result["states"] = states_json(traj);
  result["controls"] = to_json(u);
  json residuals = json::array();
  for (const auto &block : oc.nlp().constraints) residuals.push_back(constraint_residual(block, u));
  result["constraint_residuals"] = residuals;
  if (cfg.control_bounds) {
    result["control_bound_violation"] = (u - project(oc.nlp().domain, u)).lpNorm<Eigen::Infinity>();
  }
  if (cfg.goal_tolerance) result["goal"] = goal_json(cfg, traj.state(cfg.horizon), nullptr);
  if (!cfg.obstacles.empty()) {
    json obs = json::array();
    double depth = -kInf;
    for (const auto &ob : cfg.obstacles) {
      obs.push_back(obstacle_json(ob));
      for (Index t = 1; t <= cfg.horizon; ++t) depth = std::max(depth, ob.depth(traj.state(t).head<2>()));
    }
    result["obstacles"] = obs;
    result["max_penetration"] = depth;
    result["collision_free"] = depth <= 1e-6;
  }
  record["report"] = report_json(rep);
  record["traces"] = traces_json(rep);
  record["result"] = std::move(result);
  return {record, rep.converged()};
}

RunOutcome run_mpc(const ProblemConfig &cfg, json &record) {
  const auto model = make_model(cfg.model);
  const MpcSpec &spec = *cfg.mpc;
  MpcProblemBuilder build = [&](int k, const Vector &x) { return build_problem(cfg, model, x, k); };
  Plant plant = [&](const Vector &x, const Vector &u, int k) {
    Vector applied = u;
    if (spec.saturate && cfg.control_bounds) {
      applied = u.cwiseMax(cfg.control_bounds->first).cwiseMin(cfg.control_bounds->second);
    }
    Vector next = model->step(x, applied);
    if (spec.disturbance && spec.disturbance->step == k) next += spec.disturbance->delta;
    return next;
  };
  MpcOptions opts;
  opts.steps = spec.steps;
  opts.solver = cfg.solver == SolverKind::Ilqr ? MpcSolver::Ilqr : MpcSolver::Alspg;
  opts.alspg = cfg.options.alspg;
  opts.alspg.record_iterates = false;
  opts.ilqr = cfg.options.ilqr;
  opts.ilqr.record_iterates = false;
  if (cfg.goal_tolerance) {
    opts.goal_reached = [&](int, const Vector &x) {
      bool ok = false;
      goal_json(cfg, x, &ok);
      return ok;
    };
  }
  const MpcLog log = mpc_loop(build, plant, cfg.x0, cfg.initial_control.replicate(cfg.horizon, 1), opts);

  json steps = json::array();
  std::vector<double> measured;
  long iterations = 0;
  bool held = false;
  for (const auto &s : log.steps) {
    const double r = state_residual(cfg, s.x);
    measured.push_back(r);
    iterations += s.iterations;
    held = held || s.held;
    steps.push_back({{"step", s.step},
                     {"x", to_json(s.x)},
                     {"u", to_json(s.u)},
                     {"n_f", s.n_f},
                     {"n_jac", s.n_jac},
                     {"iterations", s.iterations},
                     {"objective", std::isfinite(s.objective) ? json(s.objective) : json(nullptr)},
                     {"plan_residuals", s.residuals},
                     {"state_residual", r},
                     {"termination", std::string(to_string(s.termination))},
                     {"held", s.held},
                     {"solve_time", s.solve_time}});
  }
  measured.push_back(state_residual(cfg, log.final_state));

  json result;
  result["steps"] = std::move(steps);
  result["final_state"] = to_json(log.final_state);
  result["final_state_residual"] = measured.back();
  bool ok = !held;
  if (cfg.goal_tolerance) {
    result["goal"] = goal_json(cfg, log.final_state, nullptr);
    result["goal"]["reached"] = log.goal_reached;
    result["steps_to_goal"] = log.goal_reached ? json(log.steps.size()) : json(nullptr);
    ok = ok && log.goal_reached;
  }
  if (spec.disturbance) {
    // Steps after the disturbance until the measured residual stays within
    // tolerance for the rest of the run.
    const std::size_t first = static_cast<std::size_t>(spec.disturbance->step) + 1;
    std::optional<std::size_t> settled;
    if (first < measured.size()) {
      settled = first;
      for (std::size_t i = first; i < measured.size(); ++i) {
        if (measured[i] > spec.residual_tol) settled = i + 1;
      }
      if (*settled >= measured.size()) settled.reset();
    }
    result["disturbance_step"] = spec.disturbance->step;
    result["recovery_steps"] = settled ? json(*settled - first) : json(nullptr);
    ok = ok && settled.has_value();
  }
  record["report"] = {{"termination", ok ? "converged" : "max_iters"},
                      {"message", held ? "some steps held the previous control" : ""},
                      {"n_f", log.total_n_f},
                      {"n_jac", log.total_n_jac},
                      {"iterations", iterations},
                      {"steps", log.steps.size()},
                      {"wall_time", log.total_time}};
  record["result"] = std::move(result);
  return {record, ok};
}

RunOutcome run_ik(const ProblemConfig &cfg, json &record) {
  const models::PlanarArm arm = make_arm(cfg.model);
  AlspgOptions opts = cfg.options.alspg;
  opts.record_iterates = false;
  AlspgResult res;
  json result;
  if (cfg.kind == ProblemKind::Ik) {
    res = models::constrained_ik(arm, cfg.x0, *cfg.task_set, std::nullopt, opts);
    const Eigen::Vector2d p = arm.fk(res.x);
    result["task_residual"] = (Vector(p) - project(*cfg.task_set, p)).lpNorm<Eigen::Infinity>();
  } else {
    const auto &ch = *cfg.chance;
    const models::ChanceConstraintMap map(ch.mu, ch.sigma_sqrt, ch.eta);
    res = models::robust_ik(arm, cfg.x0, map, opts);
    const Eigen::Vector2d p = arm.fk(res.x);
    result["satisfaction_rate"] = models::satisfaction_rate(map, p, ch.samples, cfg.seed);
    result["initial_satisfaction_rate"] = models::satisfaction_rate(map, arm.fk(cfg.x0), ch.samples, cfg.seed);
    const Vector w = map.value(p);
    result["cone_residual"] = (w - project(ProjectionSet::second_order_cone(), w)).lpNorm<Eigen::Infinity>();
  }
  result["q"] = to_json(res.x);
  result["end_effector"] = to_json(Vector(arm.fk(res.x)));
  result["joint_positions"] = to_json(Matrix(arm.joint_positions(res.x).transpose()));
  result["objective"] = (res.x - cfg.x0).squaredNorm();
  record["outer_iterations"] = res.outer_iterations;
  record["report"] = report_json(res.report);
  record["traces"] = traces_json(res.report);
  record["result"] = std::move(result);
  return {record, res.report.converged()};
}

void strip_in_place(json &j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end();) {
      const std::string &key = it.key();
      const bool timing = key == "wall_time" || (key.size() > 5 && key.ends_with("_time"));
      if (timing) {
        it = j.erase(it);
      } else {
        strip_in_place(*it);
        ++it;
      }
    }
  } else if (j.is_array()) {
    for (auto &e : j) strip_in_place(e);
  }
}

}  // namespace

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

json strip_timing(const json &record) {
  json out = record;
  if (out.is_object()) out.erase("digest");
  strip_in_place(out);
  return out;
}

std::string record_digest(const json &record) { return sha256_hex(strip_timing(record).dump()); }

std::string config_digest(const ProblemConfig &config) { return sha256_hex(config.document.dump()); }

json environment_stamp() {
  return {{"version", ALSPG_VERSION},
          {"build", {{"type", ALSPG_BUILD_TYPE}, {"compiler", std::string("gcc-compatible ") + __VERSION__}}}};
}

RunOutcome run_experiment(const ProblemConfig &config) {
  json record;
  record["name"] = config.name;
  record["kind"] = to_string(config.kind);
  record["solver"] = to_string(config.solver);
  record["seed"] = config.seed;
  record["config_digest"] = config_digest(config);
  record["environment"] = environment_stamp();

  RunOutcome out;
  switch (config.kind) {
    case ProblemKind::Ik:
    case ProblemKind::RobustIk: out = run_ik(config, record); break;
    case ProblemKind::Planning: out = run_planning(config, record); break;
    case ProblemKind::Mpc: out = run_mpc(config, record); break;
  }
  out.record["success"] = out.success;
  out.record["digest"] = record_digest(out.record);
  return out;
}

void write_records(const std::filesystem::path &path, const std::vector<json> &records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto &r : records) out << r.dump() << '\n';
}

}  // namespace alspg::bench
