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

#include "qhash/optimize.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <utility>

#include "oracle.hpp"
#include "qhash/table.hpp"

using namespace qhash;

namespace {

SearchConfig exhaustive(bool symmetric = true) {
  SearchConfig config;
  config.strategy = SearchStrategy::exhaustive;
  config.symmetry_reduction = symmetric;
  return config;
}

std::vector<oracle::Row> as_oracle(const HashParams& params) {
  std::vector<oracle::Row> rows;
  for (const auto& row : params.rows()) rows.emplace_back(row.begin(), row.end());
  return rows;
}

// The oracle tables are small but not free; build each one once.
const oracle::OracleOptimum& oracle_table(Index d, Index m) {
  static std::map<std::pair<Index, Index>, oracle::OracleOptimum> cache;
  auto it = cache.find({d, m});
  if (it == cache.end()) it = cache.emplace(std::pair{d, m}, oracle::full_enumeration(16, d, m)).first;
  return it->second;
}

}  // namespace

class OracleEquivalence : public ::testing::TestWithParam<std::pair<Index, Index>> {};

TEST_P(OracleEquivalence, ExhaustiveMatchesFullEnumeration) {
  const auto [d, m] = GetParam();
  const auto& expected = oracle_table(d, m);
  for (bool symmetric : {true, false}) {
    const auto report = optimize_params(16, d, m, exhaustive(symmetric));
    EXPECT_TRUE(report.certified);
    EXPECT_EQ(report.strategy_used, SearchStrategy::exhaustive);
    EXPECT_NEAR(report.worst_case_fidelity, expected.fidelity, 1e-12);
    const auto rows = as_oracle(report.params);
    EXPECT_NE(std::find(expected.argmins.begin(), expected.argmins.end(), rows), expected.argmins.end());
    EXPECT_NEAR(oracle::worst_case(rows, 16), report.worst_case_fidelity, 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Q16, OracleEquivalence,
                         ::testing::Values(std::pair<Index, Index>{2, 1}, std::pair<Index, Index>{2, 2},
                                           std::pair<Index, Index>{3, 1}, std::pair<Index, Index>{3, 2}));

TEST(OptimizeParams, FrozenSmallOptima) {
  EXPECT_NEAR(optimize_params(16, 2, 1, exhaustive()).worst_case_fidelity, 0.9619397662556429, 1e-12);
  const auto two = optimize_params(16, 2, 2, exhaustive());
  EXPECT_NEAR(two.worst_case_fidelity, 0.5, 1e-12);
  EXPECT_EQ(two.params.rows(), (std::vector<HashParams::Row>{{0, 1}, {0, 4}}));
  EXPECT_NEAR(optimize_params(16, 3, 1, exhaustive()).worst_case_fidelity, 0.6236806588614173, 1e-12);
  EXPECT_NEAR(optimize_params(16, 3, 2, exhaustive()).worst_case_fidelity, 0.08641975308642, 1e-12);
}

TEST(OptimizeParams, MonotoneInQuditCount) {
  for (Index d : {2, 3}) {
    for (Index m = 1; m < 2; ++m) {
      EXPECT_LE(oracle_table(d, m + 1).fidelity, oracle_table(d, m).fidelity + 1e-12);
    }
  }
  EXPECT_LE(oracle::full_enumeration(16, 2, 3).fidelity, oracle_table(2, 2).fidelity + 1e-12);
}

TEST(OptimizeParams, DeterministicForEqualConfig) {
  for (auto strategy : {SearchStrategy::annealing, SearchStrategy::random_restart}) {
    SearchConfig config;
    config.strategy = strategy;
    config.budget = 60'000;
    config.seed = 42;
    const auto a = optimize_params(64, 3, 3, config);
    const auto b = optimize_params(64, 3, 3, config);
    EXPECT_EQ(a.params, b.params);
    EXPECT_EQ(a.worst_case_fidelity, b.worst_case_fidelity);
    EXPECT_EQ(a.x_star, b.x_star);
    EXPECT_EQ(a.evaluations, b.evaluations);
    EXPECT_FALSE(a.certified);
  }
}

TEST(OptimizeParams, StochasticResultIsExactlyScored) {
  SearchConfig config;
  config.budget = 50'000;
  for (auto strategy : {SearchStrategy::annealing, SearchStrategy::random_restart}) {
    config.strategy = strategy;
    const auto report = optimize_params(32, 3, 2, config);
    const auto peak = worst_case_collision(report.params);
    EXPECT_EQ(report.worst_case_fidelity, peak.fidelity);
    EXPECT_EQ(report.x_star, peak.x_star);
    EXPECT_NEAR(report.worst_case_fidelity, oracle::worst_case(as_oracle(report.params), 32), 1e-12);
    EXPECT_LE(report.evaluations, config.budget + 50'000);  // polish may overrun the sampling budget
  }
}

TEST(OptimizeParams, StochasticReachesSmallOptimum) {
  SearchConfig config;
  config.budget = 200'000;
  const auto report = optimize_params(16, 3, 2, config);
  EXPECT_NEAR(report.worst_case_fidelity, oracle_table(3, 2).fidelity, 1e-12);
}

TEST(OptimizeParams, ExhaustiveFallsBackWhenTooLarge) {
  SearchConfig config = exhaustive();
  config.budget = 20'000;
  const auto report = optimize_params(256, 3, 3, config);
  EXPECT_EQ(report.strategy_used, SearchStrategy::annealing);
  EXPECT_FALSE(report.certified);
}

TEST(OptimizeParams, RejectsBadDimensions) {
  EXPECT_THROW(optimize_params(16, 1, 2, SearchConfig{}), std::invalid_argument);
  EXPECT_THROW(optimize_params(16, 17, 1, SearchConfig{}), std::invalid_argument);
  EXPECT_THROW(optimize_params(16, 2, 0, SearchConfig{}), std::invalid_argument);
  SearchConfig bad;
  bad.budget = 0;
  EXPECT_THROW(optimize_params(16, 2, 1, bad), std::invalid_argument);
  EXPECT_THROW(parse_strategy("greedy"), std::invalid_argument);
  EXPECT_EQ(parse_strategy("random-restart"), SearchStrategy::random_restart);
}

TEST(BestBiasedSet, FullGroupHasNoBias) {
  const auto set = best_biased_set(4, 4, exhaustive());
  EXPECT_EQ(set.elements, (std::vector<Index>{0, 1, 2, 3}));
  EXPECT_EQ(set.epsilon, 0.0);
  EXPECT_TRUE(set.certified);
}

TEST(BestBiasedSet, SixteenThree) {
  const auto set = best_biased_set(16, 3, exhaustive());
  EXPECT_EQ(set.elements, (std::vector<Index>{0, 1, 4}));
  EXPECT_NEAR(set.epsilon, 0.7897345496186777, 1e-12);
  EXPECT_TRUE(set.certified);
  EXPECT_NEAR(max_bias(set.elements, 16).value, set.epsilon, 1e-12);
}

TEST(EpsilonBiasedBound, SquareOfEpsilon) {
  for (Index d : {2, 3, 4}) {
    const auto set = best_biased_set(16, d, exhaustive());
    EXPECT_NEAR(epsilon_biased_bound(16, d, 1, exhaustive()), set.epsilon * set.epsilon, 1e-12);
    EXPECT_NEAR(epsilon_biased_bound(16, d, 3, exhaustive()), std::pow(set.epsilon, 6), 1e-12);
  }
  EXPECT_NEAR(epsilon_biased_bound(16, 3, 2, exhaustive()), 0.6236806588614173 * 0.6236806588614173, 1e-12);
}

TEST(EpsilonBiasedBound, SmallReferenceRows) {
  EXPECT_NEAR(epsilon_biased_bound(256, 2, 1, exhaustive()), 0.9998, 5e-4);
  EXPECT_NEAR(epsilon_biased_bound(256, 3, 1, exhaustive()), 0.9681, 5e-4);
  EXPECT_NEAR(epsilon_biased_bound(256, 3, 5, exhaustive()), 0.8504, 5e-4);
}

TEST(DecodingProbability, Examples) {
  EXPECT_DOUBLE_EQ(decoding_probability(256, 2, 5).value, 0.125);
  EXPECT_NEAR(decoding_probability(256, 3, 3).value, 27.0 / 256.0, 1e-15);
  EXPECT_DOUBLE_EQ(decoding_probability(256, 4, 2).value, 0.0625);
  const auto over = decoding_probability(256, 4, 5);
  EXPECT_DOUBLE_EQ(over.value, 4.0);
  EXPECT_TRUE(over.exceeds_one);
  EXPECT_FALSE(decoding_probability(256, 2, 8).exceeds_one);
}

TEST(Tradeoff, MatchesOracleFilter) {
  const std::vector<Index> ds{2, 3};
  for (auto [collision_limit, decoding_limit] : {std::pair{0.6, 0.6}, std::pair{0.97, 0.2}, std::pair{0.3, 1.0}}) {
    const auto entries = tradeoff(16, ds, 2, collision_limit, decoding_limit, exhaustive());
    ASSERT_EQ(entries.size(), 2u);
    for (const auto& entry : entries) {
      std::vector<Index> expected;
      for (Index m = 1; m <= 2; ++m) {
        const double decoding = std::pow(static_cast<double>(entry.d), static_cast<double>(m)) / 16.0;
        if (oracle_table(entry.d, m).fidelity <= collision_limit && decoding <= decoding_limit) expected.push_back(m);
      }
      std::vector<Index> got;
      for (const auto& point : entry.feasible) got.push_back(point.m);
      EXPECT_EQ(got, expected) << "d=" << entry.d;
    }
  }
}

TEST(Tradeoff, UnitLimitsAdmitEverything) {
  const std::vector<Index> ds{2, 3};
  const auto entries = tradeoff(16, ds, 2, 1.0, 1.0, exhaustive());
  for (const auto& entry : entries) {
    ASSERT_EQ(entry.feasible.size(), 2u);
    EXPECT_EQ(entry.fewest_qudits(), 1);
  }
}

TEST(Tradeoff, RejectsBadLimits) {
  const std::vector<Index> ds{2};
  EXPECT_THROW(tradeoff(16, ds, 2, 0.0, 0.5, exhaustive()), std::invalid_argument);
  EXPECT_THROW(tradeoff(16, ds, 2, 0.5, 1.5, exhaustive()), std::invalid_argument);
}

TEST(ReferenceTable, SlackRule) {
  EXPECT_EQ(reference_slack(0.2174), 0.02);
  EXPECT_EQ(reference_slack(0.0429), 0.005);
  EXPECT_EQ(table_search_config(4).strategy, SearchStrategy::exhaustive);
}
