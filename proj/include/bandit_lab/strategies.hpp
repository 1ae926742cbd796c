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

// Batch policies for the delayed-feedback protocol. Every policy commits all
// N stores for an epoch in one plan and learns only when that epoch's outcome
// is observed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bandit_lab/environment.hpp"
#include "bandit_lab/history.hpp"
#include "bandit_lab/metrics.hpp"
#include "bandit_lab/rng.hpp"

namespace bandit_lab {

enum class StrategyKind { EpsilonGreedy, AG1, UCB1, Thompson };

inline constexpr double kDefaultEpsilon = 0.1;
inline constexpr std::int64_t kDefaultWindow = 3;

inline std::string_view kind_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::EpsilonGreedy: return "epsilon-greedy";
    case StrategyKind::AG1: return "ag1";
    case StrategyKind::UCB1: return "ucb1";
    case StrategyKind::Thompson: return "thompson";
  }
  return "unknown";
}

inline std::optional<StrategyKind> parse_kind(std::string_view name) {
  for (auto k : {StrategyKind::EpsilonGreedy, StrategyKind::AG1, StrategyKind::UCB1,
                 StrategyKind::Thompson}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

struct StrategyConfig {
  StrategyKind kind = StrategyKind::EpsilonGreedy;
  double epsilon = kDefaultEpsilon;             // EpsilonGreedy, AG1
  std::optional<std::int64_t> window_r;         // unset: full history (AG1: kDefaultWindow)
  std::optional<std::int64_t> restart_period;   // EpsilonGreedy, Thompson

  friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

// "epsilon-greedy", "thompson*" (restarting), ...
inline std::string strategy_name(const StrategyConfig& config) {
  std::string name(kind_name(config.kind));
  if (config.restart_period) name += '*';
  return name;
}

struct StrategyState {
  StrategyConfig config;
  std::size_t num_arms = 0;
  std::size_t num_stores = 0;
  ObservationHistory history;
  std::optional<std::int64_t> last_epoch;

  Window window() const {
    return config.window_r ? Window::last(*config.window_r) : Window::full();
  }

  bool restarts_at(std::int64_t epoch) const noexcept {
    return config.restart_period && epoch % *config.restart_period == 0;
  }
};

inline StrategyState restart_wrap(StrategyState inner, std::int64_t period);

inline StrategyState init_strategy(StrategyConfig config, std::size_t num_arms, std::size_t num_stores) {
  if (num_arms < 2) throw std::invalid_argument("K must be at least 2");
  if (num_stores < num_arms) throw std::invalid_argument("N must be at least K");
  if ((config.kind == StrategyKind::EpsilonGreedy || config.kind == StrategyKind::AG1) &&
      !(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0,1)");
  }
  if (config.kind == StrategyKind::AG1 && !config.window_r) config.window_r = kDefaultWindow;
  if (config.window_r && *config.window_r < 1) throw std::invalid_argument("window_r must be at least 1");

  const auto period = config.restart_period;
  config.restart_period.reset();
  StrategyState state{config, num_arms, num_stores, ObservationHistory(num_arms, config.window_r), {}};
  return period ? restart_wrap(std::move(state), *period) : state;
}

// Clears all learned state every `period` epochs (at epochs divisible by the
// period) and plays every arm equally on the restart epoch.
inline StrategyState restart_wrap(StrategyState inner, std::int64_t period) {
  if (period < 1) throw std::invalid_argument("restart_period must be at least 1");
  if (inner.config.kind != StrategyKind::EpsilonGreedy && inner.config.kind != StrategyKind::Thompson) {
    throw std::invalid_argument(std::string("restart wrapper supports epsilon-greedy and thompson, not ") +
                                std::string(kind_name(inner.config.kind)));
  }
  inner.config.restart_period = period;
  return inner;
}

// Store n -> arm n mod K.
inline AssignmentPlan round_robin_plan(std::int64_t epoch, std::size_t num_stores, std::size_t num_arms) {
  AssignmentPlan plan{epoch, std::vector<ArmId>(num_stores)};
  for (std::size_t n = 0; n < num_stores; ++n) plan.assignments[n] = ArmId{n % num_arms};
  return plan;
}

inline std::vector<std::optional<double>> windowed_estimates(const StrategyState& state, std::int64_t epoch) {
  std::vector<std::optional<double>> est(state.num_arms);
  if (epoch < 1) return est;
  for (std::size_t k = 0; k < state.num_arms; ++k) {
    est[k] = estimate_mu(state.history, ArmId{k}, state.window(), epoch);
  }
  return est;
}

// argmax over arms that have an estimate; lowest index on ties. Arms with no
// plays inside the window are not candidates.
inline std::optional<ArmId> greedy_arm(const std::vector<std::optional<double>>& estimates) {
  std::optional<ArmId> best;
  double best_mu = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    if (estimates[k] && *estimates[k] > best_mu) {
      best = ArmId{k};
      best_mu = *estimates[k];
    }
  }
  return best;
}

inline void require_kind(const StrategyState& state, StrategyKind kind) {
  if (state.config.kind != kind) {
    throw std::invalid_argument(std::string("expected a ") + std::string(kind_name(kind)) +
                                " state, got " + std::string(kind_name(state.config.kind)));
  }
}

inline AssignmentPlan epsilon_greedy_plan(const StrategyState& state, std::int64_t epoch, Rng& rng) {
  require_kind(state, StrategyKind::EpsilonGreedy);
  const auto greedy = state.restarts_at(epoch) ? std::nullopt : greedy_arm(windowed_estimates(state, epoch));
  if (!greedy) return round_robin_plan(epoch, state.num_stores, state.num_arms);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> other(0, state.num_arms - 2);
  AssignmentPlan plan{epoch, std::vector<ArmId>(state.num_stores)};
  for (auto& slot : plan.assignments) {
    if (unit(rng) >= state.config.epsilon) {
      slot = *greedy;
    } else {
      const std::size_t j = other(rng);
      slot = ArmId{j < greedy->index ? j : j + 1};
    }
  }
  return plan;
}

// Store counts per arm for one AG1 epoch. The greedy arm gets
// floor(N(1 - eps)); the other N - n* stores go round-robin over the K-1
// remaining arms in cyclic order starting after the greedy arm.
inline std::vector<std::size_t> ag1_counts(std::size_t num_stores, double epsilon, std::size_t num_arms,
                                           ArmId greedy = ArmId{0}) {
  if (num_arms < 2) throw std::invalid_argument("K must be at least 2");
  if (num_stores < num_arms) throw std::invalid_argument("AG1 needs N >= K");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0,1]");
  if (greedy.index >= num_arms) throw std::out_of_range("greedy arm out of range");

  // The 1e-9 keeps products such as 10 * (1 - 0.3) from flooring to 6.
  const auto n_star = static_cast<std::size_t>(
      std::floor(static_cast<double>(num_stores) * (1.0 - epsilon) + 1e-9));
  const std::size_t rest = num_stores - std::min(n_star, num_stores);
  const std::size_t others = num_arms - 1;

  std::vector<std::size_t> counts(num_arms, 0);
  counts[greedy.index] = num_stores - rest;
  for (std::size_t i = 0; i < others; ++i) {
    const std::size_t arm = (greedy.index + 1 + i) % num_arms;
    counts[arm] = rest / others + (i < rest % others ? 1 : 0);
  }
  return counts;
}

inline AssignmentPlan ag1_plan(const StrategyState& state, std::int64_t epoch, Rng& /*rng*/) {
  require_kind(state, StrategyKind::AG1);
  const auto greedy = greedy_arm(windowed_estimates(state, epoch));
  if (!greedy) return round_robin_plan(epoch, state.num_stores, state.num_arms);

  auto remaining = ag1_counts(state.num_stores, state.config.epsilon, state.num_arms, *greedy);
  AssignmentPlan plan{epoch, {}};
  plan.assignments.reserve(state.num_stores);
  plan.assignments.insert(plan.assignments.end(), remaining[greedy->index], *greedy);
  remaining[greedy->index] = 0;
  while (plan.assignments.size() < state.num_stores) {
    for (std::size_t i = 1; i < state.num_arms; ++i) {
      const std::size_t arm = (greedy->index + i) % state.num_arms;
      if (remaining[arm] == 0) continue;
      --remaining[arm];
      plan.assignments.push_back(ArmId{arm});
    }
  }
  return plan;
}

// mu_hat + sqrt(2 ln t / n_k); +infinity for an arm that was never played.
inline double ucb1_metric(double mu_hat, std::int64_t t, std::size_t n_k) {
  if (t < 1) throw std::invalid_argument("UCB1 time index must be at least 1");
  if (n_k == 0) return std::numeric_limits<double>::infinity();
  return mu_hat + std::sqrt(2.0 * std::log(static_cast<double>(t)) / static_cast<double>(n_k));
}

// n(k): store assignments of each arm inside the state's window.
inline std::vector<std::size_t> play_counts(const StrategyState& state, std::int64_t epoch) {
  std::vector<std::size_t> n(state.num_arms, 0);
  for (std::size_t k = 0; k < state.num_arms; ++k) {
    n[k] = state.history.totals(ArmId{k}, state.window(), epoch).stores_assigned;
  }
  return n;
}

// Stores are assigned one at a time. The estimates stay frozen for the whole
// epoch (no feedback arrives mid-epoch) while n(k) grows with every store
// handed to arm k. t is the 1-based epoch index.
inline AssignmentPlan ucb1_plan(const StrategyState& state, std::int64_t epoch, Rng& /*rng*/) {
  require_kind(state, StrategyKind::UCB1);
  const auto estimates = windowed_estimates(state, epoch);
  if (!greedy_arm(estimates)) return round_robin_plan(epoch, state.num_stores, state.num_arms);

  auto n = play_counts(state, epoch);
  const std::int64_t t = epoch + 1;
  AssignmentPlan plan{epoch, std::vector<ArmId>(state.num_stores)};
  for (auto& slot : plan.assignments) {
    std::size_t best = 0;
    double best_m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < state.num_arms; ++k) {
      // An arm assigned this epoch but with no feedback yet is scored optimistically.
      const double m = ucb1_metric(estimates[k].value_or(1.0), t, n[k]);
      if (m > best_m) {
        best = k;
        best_m = m;
      }
    }
    slot = ArmId{best};
    ++n[best];
  }
  return plan;
}

struct BetaPosterior {
  double alpha = 1.0;  // 1 + successes
  double beta = 1.0;   // 1 + failures

  friend bool operator==(const BetaPosterior&, const BetaPosterior&) = default;
};

// Beta(1,1) prior updated with item-level successes and failures in the window.
inline std::vector<BetaPosterior> posterior_counts(const StrategyState& state, std::int64_t epoch) {
  std::vector<BetaPosterior> post(state.num_arms);
  for (std::size_t k = 0; k < state.num_arms; ++k) {
    const ArmAggregate t = state.history.totals(ArmId{k}, state.window(), epoch);
    post[k].alpha += static_cast<double>(t.items_filled);
    post[k].beta += static_cast<double>(t.items_played - t.items_filled);
  }
  return post;
}

inline double sample_beta(const BetaPosterior& p, Rng& rng) {
  const double x = std::gamma_distribution<double>(p.alpha, 1.0)(rng);
  const double y = std::gamma_distribution<double>(p.beta, 1.0)(rng);
  return x / (x + y);
}

// Fresh posterior draws for every store; each store takes the arm with the
// largest draw.
inline AssignmentPlan thompson_plan(const StrategyState& state, std::int64_t epoch, Rng& rng) {
  require_kind(state, StrategyKind::Thompson);
  if (state.restarts_at(epoch)) return round_robin_plan(epoch, state.num_stores, state.num_arms);

  const auto post = posterior_counts(state, epoch);
  AssignmentPlan plan{epoch, std::vector<ArmId>(state.num_stores)};
  for (auto& slot : plan.assignments) {
    std::size_t best = 0;
    double best_draw = -1.0;
    for (std::size_t k = 0; k < post.size(); ++k) {
      const double draw = sample_beta(post[k], rng);
      if (draw > best_draw) {
        best = k;
        best_draw = draw;
      }
    }
    slot = ArmId{best};
  }
  return plan;
}

inline AssignmentPlan plan_epoch(const StrategyState& state, std::int64_t epoch, Rng& rng) {
  if (epoch < 0) throw std::invalid_argument("epoch must be non-negative");
  switch (state.config.kind) {
    case StrategyKind::EpsilonGreedy: return epsilon_greedy_plan(state, epoch, rng);
    case StrategyKind::AG1: return ag1_plan(state, epoch, rng);
    case StrategyKind::UCB1: return ucb1_plan(state, epoch, rng);
    case StrategyKind::Thompson: return thompson_plan(state, epoch, rng);
  }
  throw std::logic_error("unhandled strategy kind");
}

inline void observe_epoch(StrategyState& state, const EpochOutcome& outcome) {
  if (state.last_epoch && outcome.epoch <= *state.last_epoch) {
    throw std::invalid_argument("epoch " + std::to_string(outcome.epoch) +
                                " already observed or out of order (last " +
                                std::to_string(*state.last_epoch) + ")");
  }
  if (outcome.num_stores() != state.num_stores) throw std::invalid_argument("outcome has wrong store count");
  EpochRecord rec = aggregate_outcome(outcome, state.num_arms);
  if (state.restarts_at(outcome.epoch)) state.history.clear();
  state.history.record(std::move(rec));
  state.last_epoch = outcome.epoch;
}

}  // namespace bandit_lab
