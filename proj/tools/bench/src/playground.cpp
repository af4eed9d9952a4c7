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
#include "alspg/bench/playground.hpp"

#include "alspg/bench/set_json.hpp"

namespace alspg::bench {

namespace {

using Ms = std::chrono::duration<double, std::milli>;

models::IkSession make_session(const PlaygroundConfig &c) {
  AlspgOptions opts = models::IkSession::default_options();
  // Outer iterates feed the end-effector path of each reply.
  opts.record_iterates = true;
  return models::IkSession(make_arm(c.model), c.q0, opts);
}

json xy(const Eigen::Vector2d &p) { return json::array({p.x(), p.y()}); }

}  // namespace

PlaygroundConfig parse_playground_config(const json &j) {
  Fields f(j, "");
  if (f.integer("schema_version") != kSchemaVersion) throw ConfigError("/schema_version", "unsupported version");
  PlaygroundConfig c;
  c.model = parse_model_spec(f.required("model"), "/model");
  if (c.model.name != "planar_arm") throw ConfigError("/model/name", "the playground serves a planar_arm");
  c.q0 = f.optional_vector("q0").value_or(Vector::Zero(c.model.lengths.size()));
  if (c.q0.size() != c.model.lengths.size()) throw ConfigError("/q0", "one entry per joint");
  c.budget_ms = f.number("budget_ms", c.budget_ms);
  if (!(c.budget_ms > 0.0)) throw ConfigError("/budget_ms", "must be positive");
  c.step_budget = static_cast<int>(f.integer("step_budget", c.step_budget));
  if (c.step_budget < 1) throw ConfigError("/step_budget", "must be >= 1");
  f.finish();
  return c;
}

PlaygroundConfig load_playground_config(const std::filesystem::path &path) {
  return parse_playground_config(read_json_file(path));
}

json protocol_error(const std::string &path, const std::string &message, const json &id) {
  return {{"version", kProtocolVersion},
          {"type", "error"},
          {"id", id},
          {"error", {{"path", path.empty() ? "/" : path}, {"message", message}}}};
}

PlaygroundSession::PlaygroundSession(const PlaygroundConfig &config)
    : config_(config), arm_(make_arm(config.model)), session_(make_session(config)) {}

std::string PlaygroundSession::handle_text(const std::string &text) {
  json message;
  try {
    message = json::parse(text);
  } catch (const json::parse_error &e) {
    return protocol_error("", std::string("malformed JSON: ") + e.what()).dump();
  }
  return handle(message).dump();
}

json PlaygroundSession::handle(const json &message) {
  const json id = message.is_object() && message.contains("id") ? message["id"] : json(nullptr);
  try {
    if (!message.is_object()) throw ConfigError("", "expected an object");
    const json *version = message.contains("version") ? &message["version"] : nullptr;
    if (!version || !version->is_number_integer() || version->get<int>() != kProtocolVersion) {
      throw ConfigError("/version", "expected protocol version " + std::to_string(kProtocolVersion));
    }
    const json *type = message.contains("type") ? &message["type"] : nullptr;
    if (!type || !type->is_string()) throw ConfigError("/type", "expected a string");
    const std::string t = type->get<std::string>();
    if (t == "hello") {
      Fields f(message, "");
      f.required("version");
      f.required("type");
      f.optional("id");
      f.finish();
      return hello();
    }
    if (t == "step") return step(message);
    if (t == "reset") return reset(message);
    throw ConfigError("/type", "unknown message type '" + t + "' (hello | step | reset)");
  } catch (const ConfigError &e) {
    return protocol_error(e.path(), e.message(), id);
  } catch (const std::exception &e) {
    return protocol_error("", e.what(), id);
  }
}

json PlaygroundSession::hello() const {
  json arm = {{"lengths", to_json(config_.model.lengths)}};
  const ProjectionSet set = arm_.joint_limits();
  const Bounds *limits = set.get_if<Bounds>();
  arm["lower"] = to_json(limits->lower);
  arm["upper"] = to_json(limits->upper);
  return {{"version", kProtocolVersion},
          {"type", "hello"},
          {"arm", arm},
          {"q", to_json(session_.q())},
          {"budget_ms", config_.budget_ms}};
}

json PlaygroundSession::reset(const json &message) {
  Fields f(message, "");
  f.required("version");
  f.required("type");
  const json id = f.has("id") ? *f.optional("id") : json(nullptr);
  Vector q = f.optional_vector("q").value_or(config_.q0);
  f.finish();
  if (q.size() != arm_.dof()) throw ConfigError("/q", "one entry per joint");
  session_ = make_session(PlaygroundConfig{config_.model, q, config_.budget_ms, config_.step_budget});
  seq_ = 0;
  json out = hello();
  out["id"] = id;
  return out;
}

json PlaygroundSession::step(const json &message) {
  const auto t0 = std::chrono::steady_clock::now();
  Fields f(message, "");
  f.required("version");
  f.required("type");
  const json id = f.has("id") ? *f.optional("id") : json(nullptr);
  const ProjectionSet set = set_from_json(f.required("set"), "/set");
  f.finish();
  if (const auto d = ambient_dim(set); d && *d != 2) throw ConfigError("/set", "the task set lives in the plane");

  const auto budget = std::chrono::duration_cast<Clock::duration>(Ms(config_.budget_ms));
  const models::IkStepResult res =
      models::closed_loop_ik_step(session_, set, config_.step_budget, Clock::now() + budget);
  const double elapsed = Ms(std::chrono::steady_clock::now() - t0).count();

  json path = json::array();
  for (const auto &q : res.report.x_trace) path.push_back(xy(arm_.fk(q)));
  json links = json::array();
  const Matrix joints = arm_.joint_positions(res.q);
  for (Index i = 0; i < joints.cols(); ++i) links.push_back(xy(joints.col(i)));

  return {{"version", kProtocolVersion},
          {"type", "state"},
          {"id", id},
          {"seq", ++seq_},
          {"q", to_json(res.q)},
          {"links", links},
          {"end_effector", xy(arm_.fk(res.q))},
          {"ee_path", path},
          {"residual", res.residual},
          {"counters",
           {{"n_f", res.report.n_f},
            {"n_grad", res.report.n_grad},
            {"n_jac", res.report.n_jac},
            {"iterations", res.report.iterations}}},
          {"budget", res.budget_exceeded || elapsed > config_.budget_ms},
          {"elapsed_ms", elapsed}};
}

}  // namespace alspg::bench
