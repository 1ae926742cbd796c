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

// Fill-rate estimation over observation windows, plus per-epoch value and
// regret accounting.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bandit_lab/environment.hpp"
#include "bandit_lab/history.hpp"

namespace bandit_lab {

// Windowed fill rate of `arm`: filled items over played items, both summed
// across the window. Absent when the arm was not played inside the window.
inline std::optional<double> estimate_mu(const ObservationHistory& history, ArmId arm,
                                         Window window, std::int64_t now) {
  if (now < 1) throw std::invalid_argument("estimate_mu requires now >= 1");
  const ArmAggregate t = history.totals(arm, window, now);
  if (t.items_played == 0) return std::nullopt;
  return static_cast<double>(t.items_filled) / static_cast<double>(t.items_played);
}

// Expected per-item fill rate of a plan: sum_k (count_k / N) * mu_k.
inline double policy_value(const RewardModel& model, const AssignmentPlan& plan) {
  validate_plan(plan, model.num_arms());
  const auto counts = plan.counts(model.num_arms());
  double value = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    value += static_cast<double>(counts[k]) * expected_reward(model, ArmId{k}, plan.epoch);
  }
  return value / static_cast<double>(plan.num_stores());
}

// mu*_t - V_t(plan). Accumulated gap by gap so the result is never negative.
inline double epoch_pseudo_regret(const RewardModel& model, const AssignmentPlan& plan) {
  validate_plan(plan, model.num_arms());
  const double mu_star = optimal_arm(model, plan.epoch).mu_star;
  const auto counts = plan.counts(model.num_arms());
  double regret = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    regret += static_cast<double>(counts[k]) * (mu_star - expected_reward(model, ArmId{k}, plan.epoch));
  }
  return regret / static_cast<double>(plan.num_stores());
}

struct EpochMetrics {
  std::int64_t epoch = 0;
  ArmId optimal_arm;
  double mu_star = 0.0;
  double realized_reward = 0.0;
  double pseudo_regret = 0.0;
  double realized_regret = 0.0;  // mu_star - realized_reward, may be negative
  std::vector<std::size_t> counts;

  friend bool operator==(const EpochMetrics&, const EpochMetrics&) = default;
};

inline EpochMetrics epoch_realized_metrics(const RewardModel& model, const EpochOutcome& outcome) {
  validate_plan(outcome.plan, model.num_arms());
  if (outcome.items_per_store == 0 ||
      outcome.results.size() != outcome.num_stores() * outcome.items_per_store) {
    throw std::invalid_argument("outcome matrix does not match N x gamma");
  }
  EpochMetrics m;
  m.epoch = outcome.epoch;
  const OptimalArm best = optimal_arm(model, outcome.epoch);
  m.optimal_arm = best.arm;
  m.mu_star = best.mu_star;
  std::size_t filled = 0;
  for (std::uint8_t v : outcome.results) filled += v;
  m.realized_reward = static_cast<double>(filled) / static_cast<double>(outcome.results.size());
  m.realized_regret = m.mu_star - m.realized_reward;
  m.pseudo_regret = epoch_pseudo_regret(model, outcome.plan);
  m.counts = outcome.plan.counts(model.num_arms());
  return m;
}

struct CumulativeSeries {
  std::vector<double> reward;
  std::vector<double> pseudo_regret;
  std::vector<double> realized_regret;
};

inline CumulativeSeries cumulative_series(std::span<const EpochMetrics> metrics) {
  CumulativeSeries s;
  s.reward.reserve(metrics.size());
  s.pseudo_regret.reserve(metrics.size());
  s.realized_regret.reserve(metrics.size());
  double reward = 0.0, pseudo = 0.0, realized = 0.0;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (i > 0 && metrics[i].epoch <= metrics[i - 1].epoch) {
      throw std::invalid_argument("metrics are not in increasing epoch order");
    }
    reward += metrics[i].realized_reward;
    pseudo += metrics[i].pseudo_regret;
    realized += metrics[i].realized_regret;
    s.reward.push_back(reward);
    s.pseudo_regret.push_back(pseudo);
    s.realized_regret.push_back(realized);
  }
  return s;
}

// Reference value of the classical UCB1 regret expression for a stationary
// model, with positive gaps d_k = mu* - mu_k:
//   8 * sum_{d_k > 0} ln(n_k) / d_k + (1 + pi^2/3) * sum_k d_k.
// Reported for context only; it is not a bound on the simulated regret.
inline double ucb1_bound_diagnostic(const RewardModel& model, std::span<const double> play_counts) {
  if (model.kind() != RewardKind::Stationary) {
    throw std::invalid_argument("UCB1 bound diagnostic needs a stationary model");
  }
  if (play_counts.size() != model.num_arms()) throw std::invalid_argument("play_counts must have K entries");
  const double mu_star = optimal_arm(model, 0).mu_star;
  double log_term = 0.0;
  double gap_sum = 0.0;
  for (std::size_t k = 0; k < play_counts.size(); ++k) {
    const double gap = mu_star - model.stationary_mu()[k];
    if (gap <= 0.0) continue;
    if (!(play_counts[k] >= 1.0)) throw std::invalid_argument("suboptimal arm needs at least one play");
    log_term += std::log(play_counts[k]) / gap;
    gap_sum += gap;
  }
  return 8.0 * log_term + (1.0 + std::numbers::pi * std::numbers::pi / 3.0) * gap_sum;
}

}  // namespace bandit_lab
