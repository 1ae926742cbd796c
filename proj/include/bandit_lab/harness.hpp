// Copyright 2026 The bandit_lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// Experiment configuration and the replication driver.
//
// Config schema (JSON, unknown keys rejected):
//
//   {
//     "name": "stationary",                 required, text
//     "N": 50, "K": 10, "gamma": 50, "T": 100,
//     "replications": 100, "base_seed": 0, "output_dir": "results",
//     "reward_model": {                     required
//       "kind": "stationary" | "sinusoidal",
//       "mu": [ ... K probabilities ... ],  stationary only, optional
//       "params": [ {"center", "amplitude", "period", "phase"} x K ],
//                                           sinusoidal only, optional
//       "clamp": [lo, hi]                   sinusoidal only, optional
//     },
//     "strategies": [                       optional
//       {"kind": "epsilon-greedy" | "ag1" | "ucb1" | "thompson",
//        "epsilon": 0.1, "window_r": 3 | "full", "restart_period": 3,
//        "name": "label"}
//     ]
//   }
//
// Random streams: replication r draws its reward model from
// split_seed(base_seed, {kModelStream, r}); strategy s in replication r
// simulates outcomes from split_seed(base_seed, {kEnvironmentStream, s, r})
// and plans from split_seed(base_seed, {kPolicyStream, s, r}).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bandit_lab/environment.hpp"
#include "bandit_lab/metrics.hpp"
#include "bandit_lab/rng.hpp"
#include "bandit_lab/strategies.hpp"

namespace bandit_lab {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class RunError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RewardModelSpec {
  RewardKind kind = RewardKind::Stationary;
  std::optional<std::vector<double>> mu;
  std::optional<std::vector<SinusoidParams>> params;
  Clamp clamp;
};

struct StrategySpec {
  std::string name;
  StrategyConfig config;
};

struct ExperimentConfig {
  std::string name;
  std::size_t N = 50;
  std::size_t K = 10;
  std::size_t gamma = 50;
  std::int64_t T = 100;
  RewardModelSpec reward_model;
  std::vector<StrategySpec> strategies;
  std::size_t replications = 100;
  std::uint64_t base_seed = 0;
  std::string output_dir = "results";
};

// Line-up used when a config lists no strategies: the stationary comparison
// for stationary models, the restart comparison for sinusoidal ones.
inline std::vector<StrategySpec> default_strategies(RewardKind kind) {
  auto make = [](StrategyKind k, std::optional<std::int64_t> window, std::optional<std::int64_t> restart) {
    StrategyConfig c;
    c.kind = k;
    c.window_r = window;
    c.restart_period = restart;
    return c;
  };
  std::vector<StrategyConfig> configs;
  if (kind == RewardKind::Stationary) {
    configs = {make(StrategyKind::EpsilonGreedy, {}, {}), make(StrategyKind::Thompson, {}, {}),
               make(StrategyKind::UCB1, {}, {})};
  } else {
    configs = {make(StrategyKind::AG1, kDefaultWindow, {}),
               make(StrategyKind::EpsilonGreedy, {}, kDefaultWindow),
               make(StrategyKind::Thompson, {}, kDefaultWindow)};
  }
  std::vector<StrategySpec> specs;
  for (auto& c : configs) specs.push_back({strategy_name(c), c});
  return specs;
}

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> known) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ConfigError(prefix + key, "unknown key");
    }
  }
}

inline std::uint64_t get_uint(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(path, "must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline double get_number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "must be a number");
  return v.get<double>();
}

inline RewardModelSpec parse_reward_model(const json& j) {
  if (!j.is_object()) throw ConfigError("reward_model", "must be an object");
  reject_unknown(j, "reward_model.", {"kind", "mu", "params", "clamp"});
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("reward_model.kind", "required: \"stationary\" or \"sinusoidal\"");
  }
  RewardModelSpec spec;
  const auto kind = j["kind"].get<std::string>();
  if (kind == "stationary") {
    spec.kind = RewardKind::Stationary;
    if (j.contains("params")) throw ConfigError("reward_model.params", "only valid for sinusoidal models");
    if (j.contains("clamp")) throw ConfigError("reward_model.clamp", "only valid for sinusoidal models");
    if (j.contains("mu")) {
      if (!j["mu"].is_array()) throw ConfigError("reward_model.mu", "must be an array");
      std::vector<double> mu;
      for (const auto& v : j["mu"]) {
        if (!v.is_number() || v.get<double>() < 0.0 || v.get<double>() > 1.0) {
          throw ConfigError("reward_model.mu", "entries must be probabilities in [0,1]");
        }
        mu.push_back(v.get<double>());
      }
      spec.mu = std::move(mu);
    }
  } else if (kind == "sinusoidal") {
    spec.kind = RewardKind::Sinusoidal;
    if (j.contains("mu")) throw ConfigError("reward_model.mu", "only valid for stationary models");
    if (j.contains("params")) {
      if (!j["params"].is_array()) throw ConfigError("reward_model.params", "must be an array");
      std::vector<SinusoidParams> params;
      for (std::size_t i = 0; i < j["params"].size(); ++i) {
        const json& p = j["params"][i];
        const std::string path = "reward_model.params[" + std::to_string(i) + "]";
        if (!p.is_object()) throw ConfigError(path, "must be an object");
        reject_unknown(p, path + ".", {"center", "amplitude", "period", "phase"});
        SinusoidParams s;
        if (p.contains("center")) s.center = get_number(p, "center", path + ".center");
        if (p.contains("amplitude")) s.amplitude = get_number(p, "amplitude", path + ".amplitude");
        if (p.contains("period")) s.period = get_number(p, "period", path + ".period");
        if (p.contains("phase")) s.phase = get_number(p, "phase", path + ".phase");
        if (!(s.period > 0.0)) throw ConfigError(path + ".period", "must be positive");
        if (!(s.amplitude >= 0.0)) throw ConfigError(path + ".amplitude", "must be non-negative");
        params.push_back(s);
      }
      spec.params = std::move(params);
    }
    if (j.contains("clamp")) {
      const json& c = j["clamp"];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
        throw ConfigError("reward_model.clamp", "must be [lo, hi]");
      }
      spec.clamp = {c[0].get<double>(), c[1].get<double>()};
      if (!(spec.clamp.lo >= 0.0 && spec.clamp.lo < spec.clamp.hi && spec.clamp.hi <= 1.0)) {
        throw ConfigError("reward_model.clamp", "requires 0 <= lo < hi <= 1");
      }
    }
  } else {
    throw ConfigError("reward_model.kind", "unknown kind \"" + kind + "\"");
  }
  return spec;
}

inline StrategySpec parse_strategy(const json& j, std::size_t index) {
  const std::string path = "strategies[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ConfigError(path, "must be an object");
  reject_unknown(j, path + ".", {"kind", "epsilon", "window_r", "restart_period", "name"});
  if (!j.contains("kind") || !j["kind"].is_string()) throw ConfigError(path + ".kind", "required");
  const auto kind = parse_kind(j["kind"].get<std::string>());
  if (!kind) throw ConfigError(path + ".kind", "unknown strategy \"" + j["kind"].get<std::string>() + "\"");

  StrategyConfig c;
  c.kind = *kind;
  if (j.contains("epsilon")) {
    if (*kind != StrategyKind::EpsilonGreedy && *kind != StrategyKind::AG1) {
      throw ConfigError(path + ".epsilon", "only valid for epsilon-greedy and ag1");
    }
    c.epsilon = get_number(j, "epsilon", path + ".epsilon");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ConfigError(path + ".epsilon", "must lie in (0,1)");
  }
  if (j.contains("window_r")) {
    const json& w = j["window_r"];
    if (w.is_string() && w.get<std::string>() == "full") {
      c.window_r.reset();
      if (*kind == StrategyKind::AG1) throw ConfigError(path + ".window_r", "ag1 needs a finite window");
    } else {
      const auto r = get_uint(j, "window_r", path + ".window_r");
      if (r < 1) throw ConfigError(path + ".window_r", "must be at least 1");
      c.window_r = static_cast<std::int64_t>(r);
    }
  } else if (*kind == StrategyKind::AG1) {
    c.window_r = kDefaultWindow;
  }
  if (j.contains("restart_period")) {
    if (*kind != StrategyKind::EpsilonGreedy && *kind != StrategyKind::Thompson) {
      throw ConfigError(path + ".restart_period", "only valid for epsilon-greedy and thompson");
    }
    const auto p = get_uint(j, "restart_period", path + ".restart_period");
    if (p < 1) throw ConfigError(path + ".restart_period", "must be at least 1");
    c.restart_period = static_cast<std::int64_t>(p);
  }
  std::string name = strategy_name(c);
  if (j.contains("name")) {
    if (!j["name"].is_string() || j["name"].get<std::string>().empty()) {
      throw ConfigError(path + ".name", "must be a non-empty string");
    }
    name = j["name"].get<std::string>();
  }
  return {std::move(name), c};
}

}  // namespace detail

inline ExperimentConfig load_config(const std::string& source) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("<document>", "must be a JSON object");
  detail::reject_unknown(j, "", {"name", "N", "K", "gamma", "T", "reward_model", "strategies",
                                 "replications", "base_seed", "output_dir"});

  ExperimentConfig cfg;
  if (j.contains("K")) cfg.K = detail::get_uint(j, "K", "K");
  if (cfg.K < 2) throw ConfigError("K", "must be at least 2");
  if (j.contains("N")) cfg.N = detail::get_uint(j, "N", "N");
  if (cfg.N < cfg.K) throw ConfigError("N", "must be at least K=" + std::to_string(cfg.K));
  if (j.contains("gamma")) cfg.gamma = detail::get_uint(j, "gamma", "gamma");
  if (cfg.gamma < 1) throw ConfigError("gamma", "must be at least 1");
  if (j.contains("T")) cfg.T = static_cast<std::int64_t>(detail::get_uint(j, "T", "T"));
  if (cfg.T < 1) throw ConfigError("T", "must be at least 1");
  if (j.contains("replications")) cfg.replications = detail::get_uint(j, "replications", "replications");
  if (cfg.replications < 1) throw ConfigError("replications", "must be at least 1");
  if (j.contains("base_seed")) cfg.base_seed = detail::get_uint(j, "base_seed", "base_seed");
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir", "must be a string");
    cfg.output_dir = j["output_dir"].get<std::string>();
  }

  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty()) {
    throw ConfigError("name", "required non-empty string");
  }
  cfg.name = j["name"].get<std::string>();
  if (cfg.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("name", "must not contain path separators");
  }

  if (!j.contains("reward_model")) throw ConfigError("reward_model", "required");
  cfg.reward_model = detail::parse_reward_model(j["reward_model"]);
  if (cfg.reward_model.mu && cfg.reward_model.mu->size() != cfg.K) {
    throw ConfigError("reward_model.mu", "must have K=" + std::to_string(cfg.K) + " entries");
  }
  if (cfg.reward_model.params && cfg.reward_model.params->size() != cfg.K) {
    throw ConfigError("reward_model.params", "must have K=" + std::to_string(cfg.K) + " entries");
  }

  if (j.contains("strategies")) {
    if (!j["strategies"].is_array() || j["strategies"].empty()) {
      throw ConfigError("strategies", "must be a non-empty array");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < j["strategies"].size(); ++i) {
      auto spec = detail::parse_strategy(j["strategies"][i], i);
      if (!names.insert(spec.name).second) {
        throw ConfigError("strategies[" + std::to_string(i) + "].name", "duplicate strategy name \"" +
                                                                           spec.name + "\"");
      }
      cfg.strategies.push_back(std::move(spec));
    }
  } else {
    cfg.strategies = default_strategies(cfg.reward_model.kind);
  }
  return cfg;
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

inline RewardModel build_reward_model(const ExperimentConfig& cfg, std::size_t replication) {
  if (cfg.reward_model.kind == RewardKind::Sinusoidal) {
    return make_sinusoidal_model(cfg.K, cfg.reward_model.params, cfg.reward_model.clamp);
  }
  Rng rng(split_seed(cfg.base_seed, {kModelStream, replication}));
  return make_stationary_model(cfg.K, cfg.reward_model.mu, rng);
}

struct RunRecord {
  std::string run_id;
  std::string strategy;
  std::size_t replication = 0;
  EpochMetrics metrics;
  double cum_reward = 0.0;
  double cum_pseudo_regret = 0.0;
  double cum_realized_regret = 0.0;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline std::string make_run_id(const std::string& experiment, const std::string& strategy,
                               std::size_t replication) {
  return experiment + "/" + strategy + "/" + std::to_string(replication);
}

// One strategy over T epochs against one reward model realization.
inline std::vector<RunRecord> run_single(const ExperimentConfig& cfg, const RewardModel& model,
                                         std::size_t strategy_index, std::size_t replication) {
  const StrategySpec& spec = cfg.strategies.at(strategy_index);
  Rng env_rng(split_seed(cfg.base_seed, {kEnvironmentStream, strategy_index, replication}));
  Rng policy_rng(split_seed(cfg.base_seed, {kPolicyStream, strategy_index, replication}));
  StrategyState state = init_strategy(spec.config, cfg.K, cfg.N);

  std::vector<RunRecord> out;
  out.reserve(static_cast<std::size_t>(cfg.T));
  const std::string run_id = make_run_id(cfg.name, spec.name, replication);
  double reward = 0.0, pseudo = 0.0, realized = 0.0;
  for (std::int64_t t = 0; t < cfg.T; ++t) {
    AssignmentPlan plan = plan_epoch(state, t, policy_rng);
    EpochOutcome outcome = simulate_epoch(model, plan, cfg.gamma, env_rng);
    EpochMetrics m = epoch_realized_metrics(model, outcome);
    observe_epoch(state, outcome);
    reward += m.realized_reward;
    pseudo += m.pseudo_regret;
    realized += m.realized_regret;
    out.push_back({run_id, spec.name, replication, std::move(m), reward, pseudo, realized});
  }
  return out;
}

// Runs every (strategy, replication) pair. Output is ordered by strategy
// (config order), replication, epoch regardless of `threads`; 0 picks the
// hardware concurrency.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, unsigned threads = 0) {
  const std::size_t num_strategies = cfg.strategies.size();
  const std::size_t jobs = num_strategies * cfg.replications;
  std::vector<std::vector<RunRecord>> slots(jobs);

  std::vector<RewardModel> models;
  models.reserve(cfg.replications);
  for (std::size_t r = 0; r < cfg.replications; ++r) models.push_back(build_reward_model(cfg, r));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t s = job / cfg.replications;
      const std::size_t r = job % cfg.replications;
      try {
        slots[job] = run_single(cfg, models[r], s, r);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mu);
        if (!failure) {
          failure = std::make_exception_ptr(RunError("experiment '" + cfg.name + "', strategy '" +
                                                     cfg.strategies[s].name + "', replication " +
                                                     std::to_string(r) + ": " + e.what()));
        }
        next = jobs;
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<RunRecord> records;
  records.reserve(jobs * static_cast<std::size_t>(cfg.T));
  for (auto& slot : slots) std::move(slot.begin(), slot.end(), std::back_inserter(records));
  return records;
}

}  // namespace bandit_lab
