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
#include "alspg/bench/suite.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <thread>

namespace alspg::bench {

namespace {

struct Stat {
  std::vector<double> values;

  json to_json() const {
    if (values.empty()) return nullptr;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double stddev = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    return {{"mean", mean}, {"std", stddev}, {"count", values.size()}};
  }
};

// Metrics read from one record; missing metrics are skipped.
const std::vector<std::pair<std::string, json::json_pointer>> &metrics() {
  static const std::vector<std::pair<std::string, json::json_pointer>> m = {
      {"wall_time", json::json_pointer("/report/wall_time")},
      {"n_f", json::json_pointer("/report/n_f")},
      {"n_jac", json::json_pointer("/report/n_jac")},
      {"iterations", json::json_pointer("/report/iterations")},
      {"objective", json::json_pointer("/result/objective")},
      {"satisfaction_rate", json::json_pointer("/result/satisfaction_rate")},
      {"steps_to_goal", json::json_pointer("/result/steps_to_goal")},
      {"recovery_steps", json::json_pointer("/result/recovery_steps")},
  };
  return m;
}

json run_member(const SuiteMember &member, const SuiteOptions &opts, int &code) {
  Overrides ov = member.overrides;
  if (!ov.seed) ov.seed = opts.defaults.seed;
  if (!ov.solver) ov.solver = opts.defaults.solver;
  json record;
  try {
    const ProblemConfig cfg = load_config(member.config, ov);
    RunOutcome out = run_experiment(cfg);
    record = std::move(out.record);
    code = out.success ? kExitOk : kExitNonconverged;
  } catch (const ConfigError &e) {
    record = {{"error", e.what()}};
    code = kExitValidation;
  } catch (const std::exception &e) {
    record = {{"error", e.what()}};
    code = kExitError;
  }
  record["label"] = member.label;
  record["config"] = member.config.generic_string();
  record["exit_code"] = code;
  return record;
}

// Orders codes by severity: runtime error > validation > nonconverged > ok.
int severity(int code) {
  switch (code) {
    case kExitOk: return 0;
    case kExitNonconverged: return 1;
    case kExitValidation: return 2;
    default: return 3;
  }
}

}  // namespace

Suite load_suite(const std::filesystem::path &path) {
  const json doc = read_json_file(path);
  Fields f(doc, "");
  const auto version = f.integer("schema_version");
  if (version != kSchemaVersion) throw ConfigError("/schema_version", "unsupported version");
  Suite suite;
  suite.name = f.string("name", path.stem().string());
  const json &members = f.required("members");
  if (!members.is_array() || members.empty()) throw ConfigError("/members", "a suite lists at least one config");
  const auto base = path.parent_path();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::string p = "/members/" + std::to_string(i);
    Fields m(members[i], p);
    SuiteMember member;
    member.config = (base / m.string("config")).lexically_normal();
    if (const json *s = m.optional("solver")) {
      if (!s->is_string()) throw ConfigError(m.child("solver"), "expected a string");
      member.overrides.solver = s->get<std::string>();
      parse_solver(*member.overrides.solver, m.child("solver"));
    }
    member.label = m.string("label", member.overrides.solver.value_or(member.config.stem().string()));
    std::vector<std::uint64_t> seeds;
    if (const json *s = m.optional("seed")) {
      const auto v = as_integer(*s, m.child("seed"));
      if (v < 0) throw ConfigError(m.child("seed"), "must be nonnegative");
      seeds.push_back(static_cast<std::uint64_t>(v));
    }
    if (const json *s = m.optional("seeds")) {
      if (!seeds.empty()) throw ConfigError(p, "seed and seeds are exclusive");
      if (!s->is_array() || s->empty()) throw ConfigError(m.child("seeds"), "expected a nonempty array");
      for (std::size_t k = 0; k < s->size(); ++k) {
        const auto v = as_integer((*s)[k], m.child("seeds") + "/" + std::to_string(k));
        if (v < 0) throw ConfigError(m.child("seeds") + "/" + std::to_string(k), "must be nonnegative");
        seeds.push_back(static_cast<std::uint64_t>(v));
      }
    }
    m.finish();
    if (seeds.empty()) {
      suite.members.push_back(member);
    } else {
      for (auto seed : seeds) {
        SuiteMember copy = member;
        copy.overrides.seed = seed;
        suite.members.push_back(std::move(copy));
      }
    }
  }
  f.finish();
  return suite;
}

SuiteResult run_suite(const Suite &suite, const SuiteOptions &opts) {
  if (suite.members.empty()) throw ConfigError("/members", "a suite lists at least one config");
  SuiteResult out;
  out.records.resize(suite.members.size());
  std::vector<int> codes(suite.members.size(), kExitOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.members.size(); i = next++) {
      out.records[i] = run_member(suite.members[i], opts, codes[i]);
    }
  };
  const int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(suite.members.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  for (int c : codes) {
    if (severity(c) > severity(out.exit_code)) out.exit_code = c;
  }
  out.summary = summarize(suite.name, out.records);
  return out;
}

json summarize(const std::string &suite_name, const std::vector<json> &records) {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::string, Stat>> stats;
  std::map<std::string, std::pair<int, int>> success;
  for (const auto &r : records) {
    const std::string label = r.value("label", r.value("solver", std::string("?")));
    if (!stats.contains(label)) order.push_back(label);
    auto &s = stats[label];
    auto &[ok, total] = success[label];
    ++total;
    if (r.value("success", false)) ++ok;
    for (const auto &[name, ptr] : metrics()) {
      if (r.contains(ptr) && r.at(ptr).is_number()) s[name].values.push_back(r.at(ptr).get<double>());
    }
  }
  json groups = json::array();
  for (const auto &label : order) {
    json g = {{"label", label}, {"runs", success[label].second}, {"succeeded", success[label].first}};
    json m = json::object();
    for (const auto &[name, stat] : stats[label]) m[name] = stat.to_json();
    g["metrics"] = m;
    groups.push_back(std::move(g));
  }
  return {{"suite", suite_name}, {"groups", groups}};
}

std::string format_summary(const json &summary) {
  std::ostringstream out;
  out << "suite " << summary.value("suite", std::string()) << "\n";
  const char *cols[] = {"wall_time", "n_f", "n_jac", "iterations", "objective"};
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-22s %6s", "label", "ok");
  out << buf;
  for (const char *c : cols) {
    std::snprintf(buf, sizeof buf, " %24s", c);
    out << buf;
  }
  out << "\n";
  for (const auto &g : summary.at("groups")) {
    std::snprintf(buf, sizeof buf, "%-22s %3d/%-2d", g.at("label").get<std::string>().c_str(),
                  g.at("succeeded").get<int>(), g.at("runs").get<int>());
    out << buf;
    for (const char *c : cols) {
      const json &m = g.at("metrics");
      if (m.contains(c) && !m.at(c).is_null()) {
        std::snprintf(buf, sizeof buf, " %11.4g +- %-9.3g", m.at(c).at("mean").get<double>(),
                      m.at(c).at("std").get<double>());
      } else {
        std::snprintf(buf, sizeof buf, " %24s", "-");
      }
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace alspg::bench
