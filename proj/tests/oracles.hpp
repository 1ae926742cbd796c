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

// Test-only reference computations. These work from raw outcome matrices and
// closed forms, never through the library's aggregation path.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bandit_lab/environment.hpp"

namespace bandit_lab::testing {

// Re-averages raw item outcomes of `arm` over epochs in the window.
inline std::optional<double> brute_force_mu(const std::vector<EpochOutcome>& outcomes, std::size_t arm,
                                            std::optional<std::int64_t> window_r, std::int64_t now) {
  double filled = 0.0;
  double played = 0.0;
  for (const auto& o : outcomes) {
    const bool in_window = o.epoch < now && (!window_r || o.epoch >= now - *window_r);
    if (!in_window) continue;
    for (std::size_t n = 0; n < o.plan.assignments.size(); ++n) {
      if (o.plan.assignments[n].index != arm) continue;
      for (std::size_t i = 0; i < o.items_per_store; ++i) {
        filled += o.results[n * o.items_per_store + i];
        played += 1.0;
      }
    }
  }
  if (played == 0.0) return std::nullopt;
  return filled / played;
}

// Random plan and outcome matrix, generated without simulate_epoch.
inline EpochOutcome random_outcome(std::int64_t epoch, std::size_t stores, std::size_t items,
                                   std::size_t arms, std::mt19937& gen) {
  EpochOutcome o;
  o.epoch = epoch;
  o.items_per_store = items;
  o.plan.epoch = epoch;
  std::uniform_int_distribution<std::size_t> arm(0, arms - 1);
  std::bernoulli_distribution bit(0.5);
  for (std::size_t n = 0; n < stores; ++n) o.plan.assignments.push_back(ArmId{arm(gen)});
  for (std::size_t c = 0; c < stores * items; ++c) o.results.push_back(bit(gen) ? 1 : 0);
  return o;
}

// Per-store UCB1 trace written straight from the index formula.
inline std::vector<std::size_t> ucb1_trace(const std::vector<double>& mu_hat, std::vector<double> n,
                                           double t, std::size_t stores) {
  std::vector<std::size_t> counts(mu_hat.size(), 0);
  for (std::size_t s = 0; s < stores; ++s) {
    std::size_t best = 0;
    double best_m = -1e300;
    for (std::size_t k = 0; k < mu_hat.size(); ++k) {
      const double m = n[k] == 0 ? 1e300 : mu_hat[k] + std::sqrt(2.0 * std::log(t) / n[k]);
      if (m > best_m) {
        best_m = m;
        best = k;
      }
    }
    ++counts[best];
    n[best] += 1.0;
  }
  return counts;
}

}  // namespace bandit_lab::testing
