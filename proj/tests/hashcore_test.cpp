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

#include "qhash/hashcore.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "qhash/optimize.hpp"
#include "test_util.hpp"

using namespace qhash;

TEST(Bias, FullGroupVanishes) {
  std::vector<Index> all(8);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_NEAR(bias(all, 3, 8), 0.0, 1e-12);
}

TEST(Bias, AntipodalPair) {
  const std::vector<Index> set{0, 128};
  EXPECT_NEAR(bias(set, 2, 256), 1.0, 1e-12);
  EXPECT_NEAR(bias(set, 1, 256), 0.0, 1e-12);
}

TEST(Bias, RejectsBadInput) {
  const std::vector<Index> empty;
  EXPECT_THROW(bias(empty, 1, 8), std::invalid_argument);
  const std::vector<Index> out_of_range{0, 8};
  EXPECT_THROW(bias(out_of_range, 1, 8), std::invalid_argument);
  const std::vector<Index> ok{0, 1};
  EXPECT_THROW(bias(ok, 8, 8), std::invalid_argument);
}

TEST(MaxBias, AdjacentPair) {
  // Frozen from a brute-force scan over all 255 nonzero x.
  const std::vector<Index> set{0, 1};
  const auto peak = max_bias(set, 256);
  EXPECT_EQ(peak.x_star, 1);
  EXPECT_NEAR(peak.value, 0.9999247018391445, 1e-12);
  EXPECT_NEAR(peak.value, std::cos(std::numbers::pi / 256.0), 1e-12);
}

TEST(MaxBias, PeriodicCollapse) {
  const std::vector<Index> set{0, 128};
  const auto peak = max_bias(set, 256);
  EXPECT_EQ(peak.x_star, 2);
  EXPECT_NEAR(peak.value, 1.0, 1e-12);
}

TEST(MaxBias, ThreeElementSetMatchesScan) {
  const std::vector<Index> set{0, 85, 171};
  const auto peak = max_bias(set, 256);
  EXPECT_EQ(peak.x_star, 3);
  EXPECT_NEAR(peak.value, 0.9997992124641361, 1e-12);
  double scan = 0.0;
  for (Index x = 1; x < 256; ++x) scan = std::max(scan, oracle::bias({0, 85, 171}, x, 256));
  EXPECT_NEAR(peak.value, scan, 1e-12);
}

TEST(NormalizeSet, Examples) {
  const std::vector<Index> a{5, 6};
  EXPECT_EQ(normalize_set(a, 256), (std::vector<Index>{0, 1}));
  const std::vector<Index> b{0, 3, 7};
  EXPECT_EQ(normalize_set(b, 256), (std::vector<Index>{0, 3, 7}));
  const std::vector<Index> dup{4, 4};
  EXPECT_THROW(normalize_set(dup, 256), std::invalid_argument);
}

TEST(NormalizeSet, PreservesBiasEverywhere) {
  std::mt19937_64 rng(20261019);
  for (int trial = 0; trial < 200; ++trial) {
    const Index q = std::uniform_int_distribution<Index>(3, 300)(rng);
    const Index d = std::uniform_int_distribution<Index>(1, std::min<Index>(q, 6))(rng);
    const auto set = testing_util::random_distinct(rng, q, d);
    const auto normalized = normalize_set(set, q);
    EXPECT_EQ(normalized.front(), 0);
    for (Index x = 0; x < q; ++x) ASSERT_NEAR(bias(set, x, q), bias(normalized, x, q), 1e-12);
    if (q >= 2) {
      EXPECT_NEAR(max_bias(set, q).value, max_bias(normalized, q).value, 1e-12);
    }
  }
}

TEST(HashParams, Validation) {
  EXPECT_NO_THROW(HashParams(256, {{0, 1}}));
  EXPECT_THROW(HashParams(256, {}), std::invalid_argument);
  EXPECT_THROW(HashParams(256, {{0}}), std::invalid_argument);
  EXPECT_THROW(HashParams(256, {{1, 2}}), std::invalid_argument);          // leading entry not 0
  EXPECT_THROW(HashParams(256, {{0, 5, 5}}), std::invalid_argument);       // repeated entry
  EXPECT_THROW(HashParams(256, {{0, 256}}), std::invalid_argument);        // out of range
  EXPECT_THROW(HashParams(256, {{0, 1}, {0, 1, 2}}), std::invalid_argument);  // ragged
}

TEST(QuditHashState, ZeroInputIsEqualSuperposition) {
  const HashParams params(256, {{0, 17, 99}, {0, 3, 200}});
  for (Index j = 0; j < 2; ++j) {
    const auto state = qudit_hash_state(params, j, 0);
    for (auto k : state.exact()->indices) EXPECT_EQ(k, 0);
    for (const auto& a : state.amplitudes()) EXPECT_NEAR(std::abs(a - Complex(1.0 / std::sqrt(3.0), 0.0)), 0.0, 1e-12);
  }
}

TEST(QuditHashState, QubitPhasePi) {
  const HashParams params(256, {{0, 1}});
  const auto state = qudit_hash_state(params, 0, 128);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(state.amplitudes()[0] - Complex(h, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(state.amplitudes()[1] - Complex(-h, 0.0)), 0.0, 1e-12);
}

TEST(QuditHashState, QutritQuarterTurns) {
  const HashParams params(4, {{0, 1, 2}});
  const auto state = qudit_hash_state(params, 0, 1);
  EXPECT_EQ(state.exact()->indices, (std::vector<Index>{0, 1, 2}));
  const double h = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(std::abs(state.amplitudes()[1] - Complex(0.0, h)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(state.amplitudes()[2] - Complex(-h, 0.0)), 0.0, 1e-12);
}

TEST(QuditHashState, RangeErrors) {
  const HashParams params(16, {{0, 1}});
  EXPECT_THROW(qudit_hash_state(params, 1, 0), std::invalid_argument);
  EXPECT_THROW(qudit_hash_state(params, -1, 0), std::invalid_argument);
  EXPECT_THROW(qudit_hash_state(params, 0, 16), std::invalid_argument);
  EXPECT_THROW(quantum_hash(params, -1), std::invalid_argument);
}

TEST(QuantumHash, SingleQuditAndNormalization) {
  const HashParams one(256, {{0, 7, 9}});
  const auto hash = quantum_hash(one, 42);
  ASSERT_EQ(hash.size(), 1u);
  EXPECT_EQ(hash.qudits[0].exact(), qudit_hash_state(one, 0, 42).exact());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto params = testing_util::random_params(rng, 256, 4, 5);
    const Index x = std::uniform_int_distribution<Index>(0, 255)(rng);
    const auto h = quantum_hash(params, x);
    ASSERT_EQ(static_cast<Index>(h.size()), params.m());
    for (const auto& qudit : h.qudits) {
      ASSERT_NEAR(qudit.norm(), 1.0, 1e-12);
      // Exact form and amplitudes agree.
      const auto rebuilt = QuditState::from_phases(qudit.exact()->q, qudit.exact()->indices);
      for (std::size_t k = 0; k < qudit.dimension(); ++k) {
        ASSERT_NEAR(std::abs(rebuilt.amplitudes()[k] - qudit.amplitudes()[k]), 0.0, 1e-12);
      }
    }
  }
}

TEST(HashFidelity, Examples) {
  const HashParams params(256, {{0, 1}});
  EXPECT_NEAR(hash_fidelity(params, 17, 17), 1.0, 1e-12);
  const HashParams small(4, {{0, 1}});
  EXPECT_NEAR(hash_fidelity(small, 0, 2), 0.0, 1e-12);
  const double expected = std::pow(std::cos(std::numbers::pi / 256.0), 2);
  EXPECT_NEAR(hash_fidelity(params, 0, 1), expected, 1e-12);
  EXPECT_NEAR(hash_fidelity(params, 0, 1), 0.9998, 0.00005);  // reported to 4 decimals
  EXPECT_THROW(hash_fidelity(params, 0, 256), std::invalid_argument);
}

TEST(HashFidelity, SymmetryTranslationAndStateForm) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const Index q = std::uniform_int_distribution<Index>(4, 300)(rng);
    const auto params = testing_util::random_params(rng, q, std::min<Index>(q, 5), 4);
    std::uniform_int_distribution<Index> pick(0, q - 1);
    const Index x1 = pick(rng);
    const Index x2 = pick(rng);
    const double f = hash_fidelity(params, x1, x2);
    ASSERT_NEAR(f, hash_fidelity(params, x2, x1), 1e-12);
    ASSERT_NEAR(f, hash_fidelity(params, mod(x1 - x2, q), 0), 1e-12);

    const auto a = quantum_hash(params, x1);
    const auto b = quantum_hash(params, x2);
    double product = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j) product *= std::norm(a.qudits[j].inner(b.qudits[j]));
    ASSERT_NEAR(f, product, 1e-12);

    std::vector<oracle::Row> rows(params.rows().begin(), params.rows().end());
    ASSERT_NEAR(f, oracle::fidelity(rows, x1, x2, q), 1e-12);
  }
}

TEST(HashFidelity, QubitReducesToCosineSquared) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Index q = std::uniform_int_distribution<Index>(2, 1000)(rng);
    const Index s = std::uniform_int_distribution<Index>(1, q - 1)(rng);
    const HashParams params(q, {{0, s}});
    std::uniform_int_distribution<Index> pick(0, q - 1);
    const Index x1 = pick(rng);
    const Index x2 = pick(rng);
    const double angle = std::numbers::pi * static_cast<double>(s) * static_cast<double>(x1 - x2) / static_cast<double>(q);
    ASSERT_NEAR(hash_fidelity(params, x1, x2), std::pow(std::cos(angle), 2), 1e-12);
  }
}

TEST(WorstCaseCollision, QubitBruteForce) {
  const HashParams params(256, {{0, 1}});
  const auto peak = worst_case_collision(params);
  EXPECT_EQ(peak.x_star, 1);
  EXPECT_NEAR(peak.fidelity, oracle::worst_case({{0, 1}}, 256), 1e-12);
  EXPECT_NEAR(peak.fidelity, 0.99985, 0.00001);
}

TEST(WorstCaseCollision, DegeneratePeriodicity) {
  // Every entry shares the factor 64 with q = 256, so x = 4 collapses all phases.
  const HashParams params(256, {{0, 64, 128, 192}});
  const auto peak = worst_case_collision(params);
  EXPECT_EQ(peak.x_star, 4);
  EXPECT_NEAR(peak.fidelity, 1.0, 1e-12);
}

TEST(WorstCaseCollision, KnownOptimumForThreeByTwo) {
  // A global optimum for d = 3, m = 2, q = 256 found by exact search.
  const HashParams params(256, {{0, 1, 19}, {0, 29, 72}});
  EXPECT_NEAR(worst_case_collision(params).fidelity, 0.5422, 0.0001);
}

TEST(WorstCaseCollision, TheoremBoundFromBiasedRows) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto params = testing_util::random_params(rng, 128, 4, 4);
    double epsilon = 0.0;
    for (const auto& row : params.rows()) epsilon = std::max(epsilon, max_bias(row, params.q()).value);
    const double bound = std::pow(epsilon, 2.0 * static_cast<double>(params.m()));
    ASSERT_LE(worst_case_collision(params).fidelity, bound + 1e-9);
  }
}

TEST(WorstCaseCollision, UnitMultiplierInvariance) {
  std::mt19937_64 rng(5);
  const Index q = 256;
  for (int trial = 0; trial < 60; ++trial) {
    const auto params = testing_util::random_params(rng, q, 4, 4);
    Index u = 0;
    do u = std::uniform_int_distribution<Index>(1, q - 1)(rng);
    while (std::gcd(u, q) != 1);
    std::vector<HashParams::Row> scaled;
    for (const auto& row : params.rows()) {
      HashParams::Row r;
      for (Index s : row) r.push_back((s * u) % q);
      scaled.push_back(r);
    }
    ASSERT_NEAR(worst_case_collision(params).fidelity, worst_case_collision(HashParams(q, scaled)).fidelity, 1e-12);
  }
}
