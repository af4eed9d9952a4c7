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

#include "alspg/bench/playground.hpp"

#include <memory>

namespace alspg::bench {

/// WebSocket front end for PlaygroundSession: one session per connection,
/// one thread per connection, text frames carry one JSON message each.
class PlaygroundServer {
 public:
  /// Binds 127.0.0.1:port (0 picks a free port).
  PlaygroundServer(PlaygroundConfig config, unsigned short port, std::string address = "127.0.0.1");
  ~PlaygroundServer();
  PlaygroundServer(const PlaygroundServer &) = delete;
  PlaygroundServer &operator=(const PlaygroundServer &) = delete;

  unsigned short port() const;
  /// Accepts connections until stop().
  void run();
  /// Safe to call from another thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace alspg::bench
