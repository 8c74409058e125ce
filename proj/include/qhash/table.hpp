// Copyright 2026 The qhash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Worst-case collision table for q = 256: the published reference values and
// the search settings used to reproduce the optimized column.

#pragma once

#include <array>
#include <cstdint>

#include "qhash/optimize.hpp"

namespace qhash {

struct ReferenceRow {
  Index d;
  Index m;
  double biased;     // (epsilon^2)^m with the best single biased set
  double optimized;  // best worst-case collision over full parameter matrices
};

inline constexpr Index kReferenceModulus = 256;

inline constexpr std::array<ReferenceRow, 16> kReferenceTable{{
    {2, 1, 0.9998, 0.9998}, {2, 2, 0.9996, 0.959},  {2, 3, 0.9994, 0.7519}, {2, 4, 0.9992, 0.4378},
    {2, 5, 0.999, 0.2031},  {2, 6, 0.9988, 0.0806}, {2, 7, 0.9986, 0.0279}, {3, 1, 0.9681, 0.9681},
    {3, 2, 0.9372, 0.5422}, {3, 3, 0.9073, 0.1483}, {3, 4, 0.8784, 0.0368}, {3, 5, 0.8504, 0.0063},
    {4, 1, 0.8329, 0.8329}, {4, 2, 0.6937, 0.2174}, {4, 3, 0.5778, 0.0429}, {4, 4, 0.4813, 0.0072},
}};

/// Allowed excess of a reproduced optimized value over the reference.
inline constexpr double reference_slack(double reference) { return reference < 0.05 ? 0.005 : 0.02; }

/// Search settings for one table row: exact enumeration where it fits under
/// kExhaustiveCeiling, otherwise annealing with a budget that grows with d.
/// About 5 minutes for the whole table on one core.
inline SearchConfig table_search_config(Index d, std::uint64_t seed = 1) {
  SearchConfig config;
  config.strategy = SearchStrategy::exhaustive;
  config.budget = d <= 2 ? 10'000'000 : (d == 3 ? 20'000'000 : 40'000'000);
  config.seed = seed;
  return config;
}

}  // namespace qhash
