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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bandit_lab/environment.hpp"

namespace bandit_lab {

struct ArmAggregate {
  std::size_t stores_assigned = 0;
  std::size_t items_played = 0;
  std::size_t items_filled = 0;

  friend bool operator==(const ArmAggregate&, const ArmAggregate&) = default;
};

struct EpochRecord {
  std::int64_t epoch = 0;
  std::vector<ArmAggregate> arms;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

inline EpochRecord aggregate_outcome(const EpochOutcome& outcome, std::size_t num_arms) {
  validate_plan(outcome.plan, num_arms);
  if (outcome.results.size() != outcome.num_stores() * outcome.items_per_store) {
    throw std::invalid_argument("outcome matrix does not match N x gamma");
  }
  EpochRecord rec{outcome.epoch, std::vector<ArmAggregate>(num_arms)};
  for (std::size_t n = 0; n < outcome.num_stores(); ++n) {
    auto& agg = rec.arms[outcome.plan.assignments[n].index];
    ++agg.stores_assigned;
    agg.items_played += outcome.items_per_store;
    for (std::uint8_t v : outcome.store_row(n)) agg.items_filled += v;
  }
  return rec;
}

// Estimation window over past epochs. Full history is {0, ..., now-1};
// a renewal window of r epochs is {now-r, ..., now-1}.
struct Window {
  std::optional<std::int64_t> renewal;

  static Window full() { return {}; }
  static Window last(std::int64_t r) {
    if (r < 1) throw std::invalid_argument("window_r must be at least 1");
    return {r};
  }

  bool contains(std::int64_t epoch, std::int64_t now) const noexcept {
    if (epoch >= now) return false;
    return !renewal || epoch >= now - *renewal;
  }

  friend bool operator==(const Window&, const Window&) = default;
};

// Per-epoch, per-arm aggregates in strictly increasing epoch order. When a
// retention horizon is set, records older than the newest `horizon` epochs
// are dropped on insert.
class ObservationHistory {
 public:
  explicit ObservationHistory(std::size_t num_arms = 0, std::optional<std::int64_t> horizon = {})
      : num_arms_(num_arms), horizon_(horizon) {}

  std::size_t num_arms() const noexcept { return num_arms_; }
  std::optional<std::int64_t> horizon() const noexcept { return horizon_; }
  const std::deque<EpochRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }

  void record(EpochRecord rec) {
    if (rec.arms.size() != num_arms_) throw std::invalid_argument("record has wrong arm count");
    if (!records_.empty() && rec.epoch <= records_.back().epoch) {
      throw std::invalid_argument("epoch " + std::to_string(rec.epoch) +
                                  " is not after the last observed epoch " +
                                  std::to_string(records_.back().epoch));
    }
    for (const auto& a : rec.arms) {
      if (a.items_filled > a.items_played) throw std::invalid_argument("items_filled > items_played");
    }
    records_.push_back(std::move(rec));
    if (horizon_) {
      const std::int64_t oldest_kept = records_.back().epoch - *horizon_ + 1;
      while (records_.front().epoch < oldest_kept) records_.pop_front();
    }
  }

  void record(const EpochOutcome& outcome) { record(aggregate_outcome(outcome, num_arms_)); }

  void clear() noexcept { records_.clear(); }

  // Sum of the aggregates for `arm` over epochs inside `window` as seen from `now`.
  ArmAggregate totals(ArmId arm, Window window, std::int64_t now) const {
    ArmAggregate sum;
    for (const auto& rec : records_) {
      if (!window.contains(rec.epoch, now)) continue;
      const auto& a = rec.arms.at(arm.index);
      sum.stores_assigned += a.stores_assigned;
      sum.items_played += a.items_played;
      sum.items_filled += a.items_filled;
    }
    return sum;
  }

 private:
  std::size_t num_arms_;
  std::optional<std::int64_t> horizon_;
  std::deque<EpochRecord> records_;
};

}  // namespace bandit_lab
