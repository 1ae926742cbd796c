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

// Ground-truth reward processes and the delayed-feedback epoch protocol.
//
// An epoch commits N stores to arms up front; each store then fills gamma
// items with its arm, and the N x gamma item outcomes are revealed together
// once the epoch is over.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bandit_lab/rng.hpp"

namespace bandit_lab {

struct ArmId {
  std::size_t index = 0;

  friend constexpr auto operator<=>(ArmId, ArmId) = default;
};

struct SinusoidParams {
  double center = 0.6;
  double amplitude = 0.3;
  double period = 50.0;  // epochs
  double phase = 0.0;    // epochs

  friend bool operator==(const SinusoidParams&, const SinusoidParams&) = default;
};

struct Clamp {
  double lo = 0.01;
  double hi = 0.99;

  friend bool operator==(const Clamp&, const Clamp&) = default;
};

enum class RewardKind { Stationary, Sinusoidal };

// Generative description of the expected reward of every arm at every epoch.
// Build through make_stationary_model / make_sinusoidal_model; exactly one of
// the parameter vectors is populated.
class RewardModel {
 public:
  RewardKind kind() const noexcept { return kind_; }
  std::size_t num_arms() const noexcept {
    return kind_ == RewardKind::Stationary ? stationary_mu_.size() : sinusoids_.size();
  }
  std::span<const double> stationary_mu() const noexcept { return stationary_mu_; }
  std::span<const SinusoidParams> sinusoid_params() const noexcept { return sinusoids_; }
  Clamp clamp() const noexcept { return clamp_; }

  friend bool operator==(const RewardModel&, const RewardModel&) = default;

 private:
  RewardKind kind_ = RewardKind::Stationary;
  std::vector<double> stationary_mu_;
  std::vector<SinusoidParams> sinusoids_;
  Clamp clamp_;

  friend RewardModel make_stationary_model(std::size_t, std::optional<std::vector<double>>, Rng&);
  friend RewardModel make_sinusoidal_model(std::size_t, std::optional<std::vector<SinusoidParams>>,
                                           Clamp);
};

// Interval for stationary means that are not given explicitly.
inline constexpr double kStationaryMuLo = 0.70;
inline constexpr double kStationaryMuHi = 0.95;

inline RewardModel make_stationary_model(std::size_t num_arms,
                                         std::optional<std::vector<double>> mu, Rng& rng) {
  if (num_arms < 2) throw std::invalid_argument("K must be at least 2, got " + std::to_string(num_arms));
  RewardModel model;
  model.kind_ = RewardKind::Stationary;
  if (mu) {
    if (mu->size() != num_arms) {
      throw std::invalid_argument("mu has " + std::to_string(mu->size()) + " entries, expected K=" +
                                  std::to_string(num_arms));
    }
    for (double m : *mu) {
      if (!(m >= 0.0 && m <= 1.0)) {
        throw std::invalid_argument("mu entry " + std::to_string(m) + " outside [0,1]");
      }
    }
    model.stationary_mu_ = std::move(*mu);
  } else {
    std::uniform_real_distribution<double> draw(kStationaryMuLo, kStationaryMuHi);
    model.stationary_mu_.resize(num_arms);
    for (double& m : model.stationary_mu_) m = draw(rng);
  }
  return model;
}

// Default sinusoids share center 0.6, amplitude 0.3 and period 50; arm k lags
// arm 0 by k * period / K epochs, so the optimal arm rotates k -> k+1 -> ...
inline std::vector<SinusoidParams> default_sinusoids(std::size_t num_arms) {
  std::vector<SinusoidParams> params(num_arms);
  for (std::size_t k = 0; k < num_arms; ++k) {
    auto& p = params[k];
    p.phase = -static_cast<double>(k) * p.period / static_cast<double>(num_arms);
  }
  return params;
}

inline RewardModel make_sinusoidal_model(std::size_t num_arms,
                                         std::optional<std::vector<SinusoidParams>> params,
                                         Clamp clamp = {}) {
  if (num_arms < 2) throw std::invalid_argument("K must be at least 2, got " + std::to_string(num_arms));
  if (!(clamp.lo >= 0.0 && clamp.lo < clamp.hi && clamp.hi <= 1.0)) {
    throw std::invalid_argument("clamp requires 0 <= lo < hi <= 1");
  }
  std::vector<SinusoidParams> p = params ? std::move(*params) : default_sinusoids(num_arms);
  if (p.size() != num_arms) {
    throw std::invalid_argument("sinusoid params has " + std::to_string(p.size()) +
                                " entries, expected K=" + std::to_string(num_arms));
  }
  for (const auto& s : p) {
    if (!(s.period > 0.0)) throw std::invalid_argument("sinusoid period must be positive");
    if (!(s.amplitude >= 0.0)) throw std::invalid_argument("sinusoid amplitude must be non-negative");
    if (!std::isfinite(s.center) || !std::isfinite(s.phase)) {
      throw std::invalid_argument("sinusoid center and phase must be finite");
    }
  }
  RewardModel model;
  model.kind_ = RewardKind::Sinusoidal;
  model.sinusoids_ = std::move(p);
  model.clamp_ = clamp;
  return model;
}

inline double expected_reward(const RewardModel& model, ArmId arm, std::int64_t epoch) {
  if (arm.index >= model.num_arms()) throw std::out_of_range("arm index out of range");
  if (model.kind() == RewardKind::Stationary) return model.stationary_mu()[arm.index];
  const SinusoidParams& s = model.sinusoid_params()[arm.index];
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(epoch) + s.phase) / s.period;
  const double raw = s.center + s.amplitude * std::sin(angle);
  return std::clamp(raw, model.clamp().lo, model.clamp().hi);
}

struct OptimalArm {
  ArmId arm;
  double mu_star = 0.0;
};

// Ties resolve to the lowest arm index.
inline OptimalArm optimal_arm(const RewardModel& model, std::int64_t epoch) {
  OptimalArm best{ArmId{0}, expected_reward(model, ArmId{0}, epoch)};
  for (std::size_t k = 1; k < model.num_arms(); ++k) {
    const double mu = expected_reward(model, ArmId{k}, epoch);
    if (mu > best.mu_star) best = {ArmId{k}, mu};
  }
  return best;
}

// Store n plays assignments[n] for every one of its items this epoch.
struct AssignmentPlan {
  std::int64_t epoch = 0;
  std::vector<ArmId> assignments;

  std::size_t num_stores() const noexcept { return assignments.size(); }

  std::vector<std::size_t> counts(std::size_t num_arms) const {
    std::vector<std::size_t> c(num_arms, 0);
    for (ArmId a : assignments) ++c.at(a.index);
    return c;
  }

  friend bool operator==(const AssignmentPlan&, const AssignmentPlan&) = default;
};

inline void validate_plan(const AssignmentPlan& plan, std::size_t num_arms) {
  if (plan.assignments.empty()) throw std::invalid_argument("plan assigns no stores");
  for (ArmId a : plan.assignments) {
    if (a.index >= num_arms) {
      throw std::invalid_argument("plan assigns arm " + std::to_string(a.index) + " but K=" +
                                  std::to_string(num_arms));
    }
  }
}

// N x gamma item outcomes, row-major by store.
struct EpochOutcome {
  std::int64_t epoch = 0;
  std::size_t items_per_store = 0;
  std::vector<std::uint8_t> results;
  AssignmentPlan plan;

  std::size_t num_stores() const noexcept { return plan.num_stores(); }

  std::span<const std::uint8_t> store_row(std::size_t store) const {
    return std::span<const std::uint8_t>(results).subspan(store * items_per_store, items_per_store);
  }

  std::uint8_t at(std::size_t store, std::size_t item) const {
    return results.at(store * items_per_store + item);
  }

  friend bool operator==(const EpochOutcome&, const EpochOutcome&) = default;
};

inline EpochOutcome simulate_epoch(const RewardModel& model, const AssignmentPlan& plan,
                                   std::size_t items_per_store, Rng& rng) {
  validate_plan(plan, model.num_arms());
  if (items_per_store == 0) throw std::invalid_argument("gamma must be at least 1");
  EpochOutcome out;
  out.epoch = plan.epoch;
  out.items_per_store = items_per_store;
  out.plan = plan;
  out.results.resize(plan.num_stores() * items_per_store);

  std::vector<double> mu(model.num_arms());
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = expected_reward(model, ArmId{k}, plan.epoch);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto cell = out.results.begin();
  for (ArmId arm : plan.assignments) {
    const double p = mu[arm.index];
    for (std::size_t i = 0; i < items_per_store; ++i, ++cell) {
      *cell = unit(rng) < p ? 1 : 0;
    }
  }
  return out;
}

}  // namespace bandit_lab
