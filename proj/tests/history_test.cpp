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


#include "bandit_lab/history.hpp"

#include <gtest/gtest.h>

#include <stdexcept>

namespace bandit_lab {
namespace {

EpochOutcome TwoStoresOnArmZero(std::int64_t epoch) {
  EpochOutcome o;
  o.epoch = epoch;
  o.items_per_store = 3;
  o.plan = {epoch, {ArmId{0}, ArmId{0}}};
  o.results = {1, 1, 0, 1, 0, 0};
  return o;
}

TEST(Aggregate, CountsStoresItemsAndFills) {
  const auto rec = aggregate_outcome(TwoStoresOnArmZero(4), 2);
  EXPECT_EQ(rec.epoch, 4);
  EXPECT_EQ(rec.arms[0], (ArmAggregate{2, 6, 3}));
  EXPECT_EQ(rec.arms[1], (ArmAggregate{0, 0, 0}));
}

TEST(Window, Membership) {
  const auto r3 = Window::last(3);
  EXPECT_FALSE(r3.contains(6, 10));
  EXPECT_TRUE(r3.contains(7, 10));
  EXPECT_TRUE(r3.contains(9, 10));
  EXPECT_FALSE(r3.contains(10, 10));
  EXPECT_TRUE(Window::full().contains(0, 10));
  EXPECT_FALSE(Window::full().contains(10, 10));
  EXPECT_THROW(Window::last(0), std::invalid_argument);
}

TEST(History, RejectsOutOfOrderAndDuplicateEpochs) {
  ObservationHistory h(2);
  h.record(TwoStoresOnArmZero(3));
  EXPECT_THROW(h.record(TwoStoresOnArmZero(3)), std::invalid_argument);
  EXPECT_THROW(h.record(TwoStoresOnArmZero(2)), std::invalid_argument);
  h.record(TwoStoresOnArmZero(5));
  EXPECT_EQ(h.records().size(), 2u);
}

TEST(History, HorizonEvictsOldEpochs) {
  ObservationHistory h(2, 3);
  for (int e = 0; e <= 10; ++e) h.record(TwoStoresOnArmZero(e));
  ASSERT_EQ(h.records().size(), 3u);
  EXPECT_EQ(h.records().front().epoch, 8);
  EXPECT_EQ(h.records().back().epoch, 10);
}

TEST(History, TotalsRespectWindow) {
  ObservationHistory h(2);
  for (int e = 0; e < 6; ++e) h.record(TwoStoresOnArmZero(e));
  EXPECT_EQ(h.totals(ArmId{0}, Window::full(), 6).items_played, 36u);
  EXPECT_EQ(h.totals(ArmId{0}, Window::last(2), 6).items_played, 12u);
  EXPECT_EQ(h.totals(ArmId{0}, Window::last(2), 6).stores_assigned, 4u);
  EXPECT_EQ(h.totals(ArmId{1}, Window::full(), 6).items_played, 0u);
}

}  // namespace
}  // namespace bandit_lab
