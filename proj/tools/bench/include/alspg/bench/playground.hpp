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
#include "alspg/models/ik.hpp"

#include <chrono>
#include <filesystem>
#include <string>

namespace alspg::bench {

inline constexpr int kProtocolVersion = 1;

/// What `serve` needs: the arm, its starting configuration and the per-message
/// solve budget.
struct PlaygroundConfig {
  ModelSpec model;
  Vector q0;
  double budget_ms = 20.0;
  /// Outer ALSPG iterations allowed per message.
  int step_budget = 10;
};

PlaygroundConfig parse_playground_config(const json &j);
PlaygroundConfig load_playground_config(const std::filesystem::path &path);

/// Solver state of one client. Messages are handled strictly in order; the
/// message grammar is documented in docs/protocol.md.
class PlaygroundSession {
 public:
  explicit PlaygroundSession(const PlaygroundConfig &config);

  /// Never throws on bad input: malformed messages yield an error reply and
  /// leave the session state untouched.
  json handle(const json &message);
  std::string handle_text(const std::string &text);

  const Vector &q() const { return session_.q(); }

 private:
  json hello() const;
  json step(const json &message);
  json reset(const json &message);

  PlaygroundConfig config_;
  models::PlanarArm arm_;
  models::IkSession session_;
  long seq_ = 0;
};

json protocol_error(const std::string &path, const std::string &message, const json &id = nullptr);

}  // namespace alspg::bench
