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
#include "alspg/bench/server.hpp"
#include "alspg/bench/suite.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace alspg::bench;

namespace {

PlaygroundServer *g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

Overrides make_overrides(const std::optional<std::int64_t> &seed, const std::string &solver) {
  Overrides o;
  if (seed) {
    if (*seed < 0) throw ConfigError("/seed", "must be nonnegative");
    o.seed = static_cast<std::uint64_t>(*seed);
  }
  if (!solver.empty()) o.solver = solver;
  return o;
}

int cmd_run(const fs::path &config, const Overrides &ov, const fs::path &out) {
  const ProblemConfig cfg = load_config(config, ov);
  RunOutcome res = run_experiment(cfg);
  res.record["config"] = config.generic_string();
  fs::create_directories(out);
  write_records(out / "records.jsonl", {res.record});
  const json summary = summarize(cfg.name.empty() ? config.stem().string() : cfg.name, {res.record});
  write_text(out / "summary.json", summary.dump(2) + "\n");
  const json &rep = res.record["report"];
  std::cout << (cfg.name.empty() ? config.string() : cfg.name) << " [" << to_string(cfg.solver)
            << "]: " << rep["termination"].get<std::string>() << "  n_f=" << rep["n_f"] << "  n_jac=" << rep["n_jac"]
            << "  iterations=" << rep["iterations"] << "\n"
            << "records: " << (out / "records.jsonl").string() << "\n";
  return res.success ? kExitOk : kExitNonconverged;
}

int cmd_suite(const fs::path &path, const Overrides &ov, int jobs, const fs::path &out) {
  const Suite suite = load_suite(path);
  SuiteOptions opts;
  opts.jobs = jobs;
  opts.defaults = ov;
  const SuiteResult res = run_suite(suite, opts);
  fs::create_directories(out);
  write_records(out / "records.jsonl", res.records);
  write_text(out / "summary.json", res.summary.dump(2) + "\n");
  const std::string table = format_summary(res.summary);
  write_text(out / "summary.txt", table);
  std::cout << table;
  for (const auto &r : res.records) {
    if (r.contains("error")) std::cerr << r["config"].get<std::string>() << ": " << r["error"].get<std::string>() << "\n";
  }
  return res.exit_code;
}

int cmd_serve(unsigned short port, const fs::path &model) {
  PlaygroundServer server(load_playground_config(model), port);
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "playground listening on ws://127.0.0.1:" << server.port() << "/" << std::endl;
  server.run();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"ALSPG experiment runner and playground service"};
  app.require_subcommand(1);

  std::optional<std::int64_t> seed;
  std::string solver;
  fs::path out = "results";
  fs::path config_path, suite_path, model_path;
  int jobs = 1;
  unsigned short port = 8765;

  auto *run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("config", config_path, "Config file")->required();
  auto *suite = app.add_subcommand("suite", "Run every config of a suite and aggregate");
  suite->add_option("suite", suite_path, "Suite file")->required();
  suite->add_option("--jobs,-j", jobs, "Configs solved in parallel")->check(CLI::PositiveNumber);
  for (auto *sub : {run, suite}) {
    sub->add_option("--seed", seed, "Override the config seed");
    sub->add_option("--solver", solver, "Override the solver")
        ->check(CLI::IsMember({"alspg", "alspg_noproj", "ilqr", "spg"}));
    sub->add_option("--out", out, "Output directory");
  }
  auto *serve = app.add_subcommand("serve", "Serve the interactive IK playground over WebSocket");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--model", model_path, "Arm model config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const Overrides ov = make_overrides(seed, solver);
    if (*run) return cmd_run(config_path, ov, out);
    if (*suite) return cmd_suite(suite_path, ov, jobs, out);
    if (*serve) return cmd_serve(port, model_path);
  } catch (const ConfigError &e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
