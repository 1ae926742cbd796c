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

#include "bandit_lab/environment.hpp"
#include "bandit_lab/harness.hpp"
#include "bandit_lab/history.hpp"
#include "bandit_lab/metrics.hpp"
#include "bandit_lab/report.hpp"
#include "bandit_lab/rng.hpp"
#include "bandit_lab/strategies.hpp"
