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
#include "alspg/bench/config.hpp"

#include "alspg/bench/set_json.hpp"
#include "alspg/models/chance.hpp"
#include "alspg/models/planar_arm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <random>
#include <sstream>

namespace alspg::bench {

namespace {

ProblemKind parse_kind(const std::string &name, const std::string &path) {
  if (name == "ik") return ProblemKind::Ik;
  if (name == "robust_ik") return ProblemKind::RobustIk;
  if (name == "planning") return ProblemKind::Planning;
  if (name == "mpc") return ProblemKind::Mpc;
  throw ConfigError(path, "unknown kind '" + name + "' (ik | robust_ik | planning | mpc)");
}

void require_size(const Vector &v, Index n, const std::string &path) {
  if (v.size() != n) {
    throw ConfigError(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
}

void require_positive(double v, const std::string &path) {
  if (!(v > 0.0)) throw ConfigError(path, "must be positive");
}

Index state_dim(const ModelSpec &m) {
  if (m.name == "double_integrator") return 4;
  if (m.name == "pusher_slider") return 4;
  return m.lengths.size();
}

Index control_dim(const ModelSpec &m) {
  if (m.name == "double_integrator" || m.name == "pusher_slider") return 2;
  return m.lengths.size();
}

bool is_arm(const ModelSpec &m) { return m.name == "planar_arm" || m.name == "arm_velocity"; }

ModelSpec parse_model(const json &j, const std::string &path) {
  Fields f(j, path);
  ModelSpec m;
  m.name = f.string("name");
  if (m.name == "planar_arm" || m.name == "arm_velocity") {
    m.lengths = f.vector("lengths");
    if (m.lengths.size() < 1) throw ConfigError(f.child("lengths"), "at least one link");
    for (Index i = 0; i < m.lengths.size(); ++i) require_positive(m.lengths[i], f.child("lengths"));
    m.lower = f.optional_vector("lower");
    m.upper = f.optional_vector("upper");
    if (m.lower.has_value() != m.upper.has_value()) {
      throw ConfigError(path, "joint limits need both lower and upper");
    }
    if (m.lower) {
      require_size(*m.lower, m.lengths.size(), f.child("lower"));
      require_size(*m.upper, m.lengths.size(), f.child("upper"));
    }
    if (m.name == "arm_velocity") m.dt = f.number("dt");
  } else if (m.name == "double_integrator") {
    m.dt = f.number("dt", 0.05);
  } else if (m.name == "pusher_slider") {
    auto &p = m.pusher;
    p.half_length = f.number("half_length", p.half_length);
    p.half_width = f.number("half_width", p.half_width);
    p.surface_friction = f.number("surface_friction", p.surface_friction);
    p.contact_friction = f.number("contact_friction", p.contact_friction);
    if (f.has("limit_surface_c")) p.limit_surface_c = f.number("limit_surface_c");
    p.dt = f.number("dt", p.dt);
    m.dt = p.dt;
  } else {
    throw ConfigError(f.child("name"),
                      "unknown model '" + m.name + "' (planar_arm | arm_velocity | double_integrator | pusher_slider)");
  }
  require_positive(m.dt, f.child("dt"));
  f.finish();
  return m;
}

// A vector, {"uniform": {"lower": [...], "upper": [...]}} drawn from rng, or
// {"by_seed": [v0, v1, ...]} picking entry seed mod count.
Vector vector_or_sample(const json &j, const std::string &path, std::mt19937_64 &rng, std::uint64_t seed) {
  if (j.is_array()) return as_vector(j, path);
  Fields f(j, path);
  if (const json *list = f.optional("by_seed")) {
    f.finish();
    if (!list->is_array() || list->empty()) throw ConfigError(f.child("by_seed"), "expected a nonempty array");
    const std::size_t k = static_cast<std::size_t>(seed % list->size());
    return as_vector((*list)[k], f.child("by_seed") + "/" + std::to_string(k));
  }
  Fields u(f.required("uniform"), f.child("uniform"));
  const Vector lo = u.vector("lower");
  const Vector hi = u.vector("upper");
  u.finish();
  f.finish();
  require_size(hi, lo.size(), u.child("upper"));
  Vector out(lo.size());
  for (Index i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) throw ConfigError(u.child("upper"), "upper below lower");
    out[i] = std::uniform_real_distribution<double>(lo[i], hi[i])(rng);
  }
  return out;
}

QuadraticSpec parse_quadratic(const json &j, const std::string &path, Index n, std::mt19937_64 &rng,
                              std::uint64_t seed) {
  Fields f(j, path);
  QuadraticSpec q;
  q.weight = f.vector("weight");
  q.goal = vector_or_sample(f.required("goal"), f.child("goal"), rng, seed);
  f.finish();
  require_size(q.weight, n, f.child("weight"));
  require_size(q.goal, n, f.child("goal"));
  for (Index i = 0; i < n; ++i) {
    if (q.weight[i] < 0.0) throw ConfigError(f.child("weight"), "weights must be nonnegative");
  }
  return q;
}

Eigen::Vector2d vec2(const json &j, const std::string &path) {
  const Vector v = as_vector(j, path);
  require_size(v, 2, path);
  return {v[0], v[1]};
}

ReachSpec parse_reach(const json &j, const std::string &path, std::mt19937_64 &rng, std::uint64_t seed) {
  Fields f(j, path);
  ReachSpec r;
  const json *target = f.optional("target");
  const json *moving = f.optional("moving_target");
  if (!target == !moving) throw ConfigError(path, "exactly one of target and moving_target");
  if (target) {
    const Vector t = vector_or_sample(*target, f.child("target"), rng, seed);
    require_size(t, 2, f.child("target"));
    r.target = {t[0], t[1]};
  }
  if (moving) {
    Fields m(*moving, f.child("moving_target"));
    MovingTarget mt;
    mt.center = vec2(m.required("center"), m.child("center"));
    mt.radius = m.number("radius");
    mt.rate = m.number("rate");
    mt.phase = m.number("phase", 0.0);
    m.finish();
    r.moving = mt;
  }
  r.weight = f.number("weight", 1.0);
  if (r.weight < 0.0) throw ConfigError(f.child("weight"), "must be nonnegative");
  const std::string when = f.string("timesteps", "all");
  if (when != "all" && when != "terminal") throw ConfigError(f.child("timesteps"), "all | terminal");
  r.terminal_only = when == "terminal";
  f.finish();
  return r;
}

std::vector<Index> parse_index_list(const json &j, const std::string &path, Index lo, Index hi) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a nonempty array of integers");
  std::vector<Index> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto v = as_integer(j[i], path + "/" + std::to_string(i));
    if (v < lo || v > hi) {
      throw ConfigError(path + "/" + std::to_string(i),
                        "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    out.push_back(static_cast<Index>(v));
  }
  return out;
}

ConstraintSpec parse_constraint(const json &j, const std::string &path, const ProblemConfig &cfg) {
  Fields f(j, path);
  ConstraintSpec c;
  c.name = f.string("name", "constraint");
  const std::string on = f.string("on", "state");
  Index slice = 0;
  if (on == "state") {
    c.on = ConstraintSpec::On::State;
    c.indices = parse_index_list(f.required("indices"), f.child("indices"), 0, state_dim(cfg.model) - 1);
    slice = static_cast<Index>(c.indices.size());
  } else if (on == "end_effector") {
    if (!is_arm(cfg.model)) throw ConfigError(f.child("on"), "end_effector needs an arm model");
    c.on = ConstraintSpec::On::EndEffector;
    slice = 2;
  } else {
    throw ConfigError(f.child("on"), "state | end_effector");
  }
  if (const json *ts = f.optional("timesteps")) {
    if (!(ts->is_string() && ts->get<std::string>() == "all")) {
      c.timesteps = parse_index_list(*ts, f.child("timesteps"), 1, cfg.horizon);
    }
  }
  c.set = set_from_json(f.required("set"), f.child("set"));
  if (const auto d = ambient_dim(c.set); d && *d != slice) {
    throw ConfigError(f.child("set"), "set dimension " + std::to_string(*d) + " does not match the constrained slice (" +
                                          std::to_string(slice) + ")");
  }
  f.finish();
  return c;
}

models::RectObstacle parse_rectangle(const json &j, const std::string &path) {
  Fields f(j, path);
  models::RectObstacle ob;
  ob.center = vec2(f.required("center"), f.child("center"));
  ob.length = f.number("length");
  ob.width = f.number("width");
  ob.angle = f.number("angle", 0.0);
  require_positive(ob.length, f.child("length"));
  require_positive(ob.width, f.child("width"));
  f.finish();
  return ob;
}

void parse_obstacles(const json &j, const std::string &path, ProblemConfig &cfg) {
  Fields f(j, path);
  cfg.obstacle_margin = f.number("margin", 0.0);
  if (cfg.obstacle_margin < 0.0) throw ConfigError(f.child("margin"), "must be nonnegative");
  const json *rects = f.optional("rectangles");
  const json *layout = f.optional("layout");
  if (!rects == !layout) throw ConfigError(path, "exactly one of rectangles and layout");
  if (rects) {
    if (!rects->is_array()) throw ConfigError(f.child("rectangles"), "expected an array");
    for (std::size_t i = 0; i < rects->size(); ++i) {
      cfg.obstacles.push_back(parse_rectangle((*rects)[i], f.child("rectangles") + "/" + std::to_string(i)));
    }
  } else {
    Fields l(*layout, f.child("layout"));
    models::ObstacleLayoutOptions o;
    o.count = static_cast<int>(l.integer("count", o.count));
    o.min_side = l.number("min_side", o.min_side);
    o.max_side = l.number("max_side", o.max_side);
    o.along_min = l.number("along_min", o.along_min);
    o.along_max = l.number("along_max", o.along_max);
    o.spread = l.number("spread", o.spread);
    o.clearance = l.number("clearance", o.clearance);
    const Eigen::Vector2d start = vec2(l.required("start"), l.child("start"));
    const Eigen::Vector2d goal = vec2(l.required("goal"), l.child("goal"));
    l.finish();
    try {
      cfg.obstacles = models::random_obstacle_layout(cfg.seed, start, goal, o);
    } catch (const std::exception &e) {
      throw ConfigError(f.child("layout"), e.what());
    }
  }
  f.finish();
}

void parse_spg_options(const json &j, const std::string &path, SpgOptions &o) {
  Fields f(j, path);
  o.epsilon = f.number("epsilon", o.epsilon);
  o.max_iters = static_cast<int>(f.integer("max_iters", o.max_iters));
  o.memory = static_cast<int>(f.integer("memory", o.memory));
  o.beta = f.number("beta", o.beta);
  o.gamma_min = f.number("gamma_min", o.gamma_min);
  o.gamma_max = f.number("gamma_max", o.gamma_max);
  o.alpha_min = f.number("alpha_min", o.alpha_min);
  f.finish();
  try {
    o.validate();
  } catch (const std::exception &e) {
    throw ConfigError(path, e.what());
  }
}

void parse_solver_options(const json &j, const std::string &path, SolverOptions &o) {
  Fields f(j, path);
  if (const json *a = f.optional("alspg")) {
    Fields g(*a, f.child("alspg"));
    auto &ao = o.alspg;
    ao.epsilon_outer = g.number("epsilon_outer", ao.epsilon_outer);
    ao.rho0 = g.number("rho0", ao.rho0);
    ao.rho_growth = g.number("rho_growth", ao.rho_growth);
    ao.rho_max = g.number("rho_max", ao.rho_max);
    ao.lambda_max = g.number("lambda_max", ao.lambda_max);
    ao.max_outer = static_cast<int>(g.integer("max_outer", ao.max_outer));
    ao.inner_epsilon_start = g.number("inner_epsilon_start", ao.inner_epsilon_start);
    ao.inner_epsilon_decay = g.number("inner_epsilon_decay", ao.inner_epsilon_decay);
    if (const json *inner = g.optional("inner")) parse_spg_options(*inner, g.child("inner"), ao.inner);
    g.finish();
    try {
      ao.validate();
    } catch (const std::exception &e) {
      throw ConfigError(f.child("alspg"), e.what());
    }
  }
  if (const json *s = f.optional("spg")) parse_spg_options(*s, f.child("spg"), o.spg);
  if (const json *i = f.optional("ilqr")) {
    Fields g(*i, f.child("ilqr"));
    auto &io = o.ilqr;
    io.max_iters = static_cast<int>(g.integer("max_iters", io.max_iters));
    io.tol = g.number("tol", io.tol);
    io.backtrack = g.number("backtrack", io.backtrack);
    io.alpha_min = g.number("alpha_min", io.alpha_min);
    io.reg_init = g.number("reg_init", io.reg_init);
    io.reg_growth = g.number("reg_growth", io.reg_growth);
    io.reg_max = g.number("reg_max", io.reg_max);
    g.finish();
    if (io.max_iters < 1 || !(io.tol > 0.0) || !(io.backtrack > 0.0 && io.backtrack < 1.0) ||
        !(io.alpha_min > 0.0) || !(io.reg_init > 0.0) || !(io.reg_growth > 1.0) || io.reg_max < io.reg_init) {
      throw ConfigError(f.child("ilqr"), "invalid iLQR options");
    }
  }
  f.finish();
}

void check_solver(const ProblemConfig &cfg) {
  const bool constrained = !cfg.constraints.empty() || !cfg.obstacles.empty();
  switch (cfg.kind) {
    case ProblemKind::Ik:
    case ProblemKind::RobustIk:
      if (cfg.solver != SolverKind::Alspg) throw ConfigError("/solver", "ik kinds are solved with alspg");
      return;
    case ProblemKind::Planning:
    case ProblemKind::Mpc:
      if (cfg.solver == SolverKind::Spg && constrained) {
        throw ConfigError("/solver", "spg handles control bounds only; use alspg for constraints");
      }
      if (cfg.solver == SolverKind::Ilqr && constrained) {
        throw ConfigError("/solver", "ilqr is an unconstrained baseline; remove constraints and obstacles");
      }
      if (cfg.solver == SolverKind::AlspgNoProj && cfg.obstacles.empty()) {
        throw ConfigError("/solver", "alspg_noproj differs from alspg only on obstacles");
      }
      if (cfg.kind == ProblemKind::Mpc && cfg.solver != SolverKind::Alspg && cfg.solver != SolverKind::Ilqr) {
        throw ConfigError("/solver", "mpc runs alspg or ilqr");
      }
      return;
  }
}

}  // namespace

std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::Ik: return "ik";
    case ProblemKind::RobustIk: return "robust_ik";
    case ProblemKind::Planning: return "planning";
    case ProblemKind::Mpc: return "mpc";
  }
  return "?";
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Alspg: return "alspg";
    case SolverKind::AlspgNoProj: return "alspg_noproj";
    case SolverKind::Ilqr: return "ilqr";
    case SolverKind::Spg: return "spg";
  }
  return "?";
}

SolverKind parse_solver(const std::string &name, const std::string &path) {
  if (name == "alspg") return SolverKind::Alspg;
  if (name == "alspg_noproj") return SolverKind::AlspgNoProj;
  if (name == "ilqr") return SolverKind::Ilqr;
  if (name == "spg") return SolverKind::Spg;
  throw ConfigError(path, "unknown solver '" + name + "' (alspg | alspg_noproj | ilqr | spg)");
}

Eigen::Vector2d ReachSpec::target_at(int step) const {
  if (!moving) return target;
  const double a = moving->phase + moving->rate * step;
  return moving->center + moving->radius * Eigen::Vector2d(std::cos(a), std::sin(a));
}

ProblemConfig parse_config(json document, const Overrides &overrides) {
  if (!document.is_object()) throw ConfigError("", "expected an object");
  if (overrides.seed) document["seed"] = *overrides.seed;
  if (overrides.solver) document["solver"] = *overrides.solver;

  ProblemConfig cfg;
  Fields f(document, "");
  const auto version = f.integer("schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError("/schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                                             std::to_string(kSchemaVersion) + ")");
  }
  cfg.name = f.string("name", "");
  cfg.kind = parse_kind(f.string("kind"), "/kind");
  cfg.solver = parse_solver(f.string("solver"), "/solver");
  const auto seed = f.integer("seed");
  if (seed < 0) throw ConfigError("/seed", "must be nonnegative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  std::mt19937_64 rng(cfg.seed);
  cfg.model = parse_model(f.required("model"), "/model");
  const Index n = state_dim(cfg.model);
  const Index m = control_dim(cfg.model);
  cfg.x0 = f.vector("x0");
  require_size(cfg.x0, n, "/x0");
  if (const json *opts = f.optional("solver_options")) parse_solver_options(*opts, "/solver_options", cfg.options);

  if (cfg.kind == ProblemKind::Ik || cfg.kind == ProblemKind::RobustIk) {
    if (cfg.model.name != "planar_arm") throw ConfigError("/model/name", "ik kinds use planar_arm");
    if (cfg.kind == ProblemKind::Ik) {
      cfg.task_set = set_from_json(f.required("task_set"), "/task_set");
      if (const auto d = ambient_dim(*cfg.task_set); d && *d != 2) {
        throw ConfigError("/task_set", "task set must be 2-dimensional");
      }
    } else {
      Fields c(f.required("chance"), "/chance");
      ChanceSpec ch;
      ch.mu = c.vector("mu");
      require_size(ch.mu, 2, "/chance/mu");
      ch.sigma_sqrt = as_matrix(c.required("sigma_sqrt"), "/chance/sigma_sqrt");
      ch.eta = c.number("eta");
      ch.samples = static_cast<int>(c.integer("samples", ch.samples));
      c.finish();
      if (ch.samples < 1) throw ConfigError("/chance/samples", "must be >= 1");
      try {
        models::ChanceConstraintMap probe(ch.mu, ch.sigma_sqrt, ch.eta);
      } catch (const std::exception &e) {
        throw ConfigError("/chance", e.what());
      }
      cfg.chance = std::move(ch);
    }
  } else {
    if (cfg.model.name == "planar_arm") throw ConfigError("/model/name", "use arm_velocity for trajectories");
    cfg.horizon = f.integer("horizon");
    if (cfg.horizon < 1) throw ConfigError("/horizon", "must be >= 1");

    Fields c(f.required("cost"), "/cost");
    cfg.cost.control_weight = c.vector("control_weight");
    require_size(cfg.cost.control_weight, m, "/cost/control_weight");
    if (const json *t = c.optional("terminal")) cfg.cost.terminal = parse_quadratic(*t, "/cost/terminal", n, rng, cfg.seed);
    if (const json *r = c.optional("running")) cfg.cost.running = parse_quadratic(*r, "/cost/running", n, rng, cfg.seed);
    if (const json *r = c.optional("reach")) {
      if (!is_arm(cfg.model)) throw ConfigError("/cost/reach", "reach cost needs an arm model");
      cfg.cost.reach = parse_reach(*r, "/cost/reach", rng, cfg.seed);
    }
    c.finish();

    cfg.initial_control = Vector::Zero(m);
    if (auto u = f.optional_vector("initial_control")) {
      require_size(*u, m, "/initial_control");
      cfg.initial_control = *u;
    }
    if (const json *b = f.optional("control_bounds")) {
      Fields bf(*b, "/control_bounds");
      Vector lo = as_vector(bf.required("lower"), "/control_bounds/lower", -kInf);
      Vector hi = as_vector(bf.required("upper"), "/control_bounds/upper", kInf);
      bf.finish();
      require_size(lo, m, "/control_bounds/lower");
      require_size(hi, m, "/control_bounds/upper");
      if ((hi.array() < lo.array()).any()) throw ConfigError("/control_bounds", "upper below lower");
      cfg.control_bounds = std::make_pair(std::move(lo), std::move(hi));
    }
    if (const json *cs = f.optional("constraints")) {
      if (!cs->is_array()) throw ConfigError("/constraints", "expected an array");
      for (std::size_t i = 0; i < cs->size(); ++i) {
        cfg.constraints.push_back(parse_constraint((*cs)[i], "/constraints/" + std::to_string(i), cfg));
      }
    }
    if (const json *ob = f.optional("obstacles")) {
      if (cfg.model.name != "double_integrator") throw ConfigError("/obstacles", "obstacles need double_integrator");
      parse_obstacles(*ob, "/obstacles", cfg);
    }
    if (const json *g = f.optional("goal_tolerance")) {
      Fields gf(*g, "/goal_tolerance");
      GoalTolerance tol;
      tol.position = gf.number("position", tol.position);
      if (gf.has("angle")) {
        if (cfg.model.name != "pusher_slider") throw ConfigError("/goal_tolerance/angle", "model has no heading");
        tol.angle = gf.number("angle");
      }
      gf.finish();
      if (!cfg.cost.terminal) throw ConfigError("/goal_tolerance", "needs a terminal goal in /cost/terminal");
      cfg.goal_tolerance = tol;
    }
    if (cfg.kind == ProblemKind::Mpc) {
      Fields mf(f.required("mpc"), "/mpc");
      MpcSpec spec;
      spec.steps = static_cast<int>(mf.integer("steps"));
      if (spec.steps < 1) throw ConfigError("/mpc/steps", "must be >= 1");
      spec.saturate = mf.boolean("saturate", spec.saturate);
      spec.residual_tol = mf.number("residual_tol", spec.residual_tol);
      if (const json *d = mf.optional("disturbance")) {
        Fields df(*d, "/mpc/disturbance");
        Disturbance dist;
        dist.step = static_cast<int>(df.integer("step"));
        dist.delta = df.vector("delta");
        df.finish();
        require_size(dist.delta, n, "/mpc/disturbance/delta");
        spec.disturbance = std::move(dist);
      }
      mf.finish();
      if (cfg.horizon < 2) throw ConfigError("/horizon", "mpc needs a horizon >= 2");
      cfg.mpc = spec;
    } else if (cfg.cost.reach && cfg.cost.reach->moving) {
      throw ConfigError("/cost/reach/moving_target", "moving targets need kind mpc");
    }
    if (!cfg.cost.terminal && !cfg.cost.running && !cfg.cost.reach) {
      throw ConfigError("/cost", "needs at least one of terminal, running, reach");
    }
  }
  f.finish();
  check_solver(cfg);
  cfg.document = std::move(document);
  return cfg;
}

json read_json_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error &e) {
    throw ConfigError("", path.string() + ": " + e.what());
  }
}

ModelSpec parse_model_spec(const json &j, const std::string &path) { return parse_model(j, path); }

models::PlanarArm make_arm(const ModelSpec &m) {
  if (m.name != "planar_arm" && m.name != "arm_velocity") throw std::invalid_argument("make_arm: not an arm model");
  if (m.lower) return models::PlanarArm(m.lengths, *m.lower, *m.upper);
  return models::PlanarArm(m.lengths);
}

ProblemConfig load_config(const std::filesystem::path &path, const Overrides &overrides) {
  return parse_config(read_json_file(path), overrides);
}

}  // namespace alspg::bench
