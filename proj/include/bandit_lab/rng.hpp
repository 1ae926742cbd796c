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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bandit_lab {

// Every random draw in the library goes through this engine type so that a
// (config, seed) pair pins the output bit for bit.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed-splitting rule: fold each coordinate into the running state with
// h <- mix64(h ^ mix64(c)), starting from h = mix64(base). Distinct coordinate
// tuples give statistically independent child streams.
constexpr std::uint64_t split_seed(std::uint64_t base,
                                   std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = mix64(base);
  for (std::uint64_t c : coords) h = mix64(h ^ mix64(c));
  return h;
}

// Stream tags, so that the reward-model stream of replication r can never
// coincide with any strategy stream.
inline constexpr std::uint64_t kModelStream = 0x6d6f64656cULL;
inline constexpr std::uint64_t kEnvironmentStream = 0x656e76ULL;
inline constexpr std::uint64_t kPolicyStream = 0x706f6cULL;

}  // namespace bandit_lab
