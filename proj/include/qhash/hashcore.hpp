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

// Hash-state construction over Z_q, character-sum bias and closed-form
// fidelity between hashes.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "qhash/types.hpp"

namespace qhash {

/// Two scores closer than this are treated as equal when picking an argmax or
/// argmin, so ties resolve to the earliest candidate regardless of rounding.
inline constexpr double kTieTolerance = 1e-12;

namespace detail {

inline void check_set(std::span<const Index> set, Index q) {
  require(q >= 1, "q must be positive");
  require(!set.empty(), "set must be nonempty");
  for (Index s : set) require(s >= 0 && s < q, "set element outside [0, q)");
}

}  // namespace detail

/// |sum_k exp(2*pi*i*s_k*x/q)|^2 / d^2 for one row, using exact index
/// reduction. This is the single-qudit collision factor at input difference x.
inline double row_collision(const PhaseTable& table, std::span<const Index> row, Index x) {
  const Index q = table.modulus();
  const Index xr = mod(x, q);
  double re = 0.0;
  double im = 0.0;
  for (Index s : row) {
    const Index k = (s * xr) % q;
    re += table.cos_at(k);
    im += table.sin_at(k);
  }
  const double d = static_cast<double>(row.size());
  return (re * re + im * im) / (d * d);
}

/// Collision factor of `row` for every x in [1, q); entry x-1 holds x.
inline std::vector<double> row_profile(const PhaseTable& table, std::span<const Index> row) {
  const Index q = table.modulus();
  std::vector<double> profile(static_cast<std::size_t>(q - 1));
  for (Index x = 1; x < q; ++x) profile[static_cast<std::size_t>(x - 1)] = row_collision(table, row, x);
  return profile;
}

/// Normalized character-sum modulus (1/|S|)|sum_{s in S} exp(2*pi*i*s*x/q)|.
inline double bias(std::span<const Index> set, Index x, Index q) {
  detail::check_set(set, q);
  require(x >= 0 && x < q, "bias: x outside [0, q)");
  const PhaseTable table(q);
  return std::sqrt(row_collision(table, set, x));
}

struct BiasPeak {
  Index x_star = 0;
  double value = 0.0;
};

/// Largest bias over nonzero x; the smallest maximizing x is reported.
inline BiasPeak max_bias(std::span<const Index> set, Index q) {
  detail::check_set(set, q);
  require(q >= 2, "max_bias: q must be at least 2");
  const PhaseTable table(q);
  BiasPeak peak{1, -1.0};
  for (Index x = 1; x < q; ++x) {
    const double value = std::sqrt(row_collision(table, set, x));
    if (value > peak.value + kTieTolerance) peak = {x, value};
  }
  return peak;
}

/// Shifts a set so it contains 0: {0, s_2 - s_1, ..., s_d - s_1} mod q, sorted.
/// Bias is unchanged at every x.
inline std::vector<Index> normalize_set(std::span<const Index> set, Index q) {
  detail::check_set(set, q);
  std::vector<Index> out;
  out.reserve(set.size());
  for (Index s : set) out.push_back(mod(s - set.front(), q));
  std::sort(out.begin(), out.end());
  require(std::adjacent_find(out.begin(), out.end()) == out.end(), "normalize_set: duplicate elements");
  return out;
}

/// Certified (or best-found) small-bias set.
struct BiasedSet {
  Index q = 1;
  std::vector<Index> elements;
  double epsilon = 1.0;
  bool certified = false;
};

/// State of qudit j (0-based) for input x: phase index (s_{j,k} * x) mod q.
inline QuditState qudit_hash_state(const HashParams& params, Index j, Index x) {
  require(j >= 0 && j < params.m(), "qudit_hash_state: qudit index out of range");
  require(x >= 0 && x < params.q(), "qudit_hash_state: x outside [0, q)");
  std::vector<Index> indices;
  indices.reserve(static_cast<std::size_t>(params.d()));
  for (Index s : params.row(j)) indices.push_back((s * x) % params.q());
  return QuditState::from_phases(params.q(), std::move(indices));
}

inline QuantumHash quantum_hash(const HashParams& params, Index x) {
  require(x >= 0 && x < params.q(), "quantum_hash: x outside [0, q)");
  QuantumHash hash;
  hash.qudits.reserve(static_cast<std::size_t>(params.m()));
  for (Index j = 0; j < params.m(); ++j) hash.qudits.push_back(qudit_hash_state(params, j, x));
  return hash;
}

/// |<psi(x1)|psi(x2)>|^2 from the product formula over rows, evaluated on the
/// exact difference (x1 - x2) mod q.
inline double hash_fidelity(const HashParams& params, Index x1, Index x2) {
  const Index q = params.q();
  require(x1 >= 0 && x1 < q && x2 >= 0 && x2 < q, "hash_fidelity: input outside [0, q)");
  const PhaseTable table(q);
  const Index diff = mod(x1 - x2, q);
  double fidelity = 1.0;
  for (const auto& row : params.rows()) fidelity *= row_collision(table, row, diff);
  return fidelity;
}

struct CollisionPeak {
  Index x_star = 0;
  double fidelity = 0.0;
};

/// Largest product of per-row factors over x in [1, q), given precomputed
/// profiles. Smallest x wins ties.
inline CollisionPeak worst_case_from_profiles(std::span<const std::vector<double>> profiles) {
  require(!profiles.empty(), "worst_case_from_profiles: no rows");
  const std::size_t n = profiles.front().size();
  CollisionPeak peak{1, -1.0};
  for (std::size_t i = 0; i < n; ++i) {
    double product = 1.0;
    for (const auto& profile : profiles) product *= profile[i];
    if (product > peak.fidelity + kTieTolerance) peak = {static_cast<Index>(i + 1), product};
  }
  return peak;
}

/// Worst-case collision probability of a parameter matrix: max over x != 0 of
/// hash_fidelity(params, x, 0). Every pair (x1, x2) reduces to this by
/// translation.
inline CollisionPeak worst_case_collision(const HashParams& params) {
  const PhaseTable table(params.q());
  std::vector<std::vector<double>> profiles;
  profiles.reserve(params.rows().size());
  for (const auto& row : params.rows()) profiles.push_back(row_profile(table, row));
  return worst_case_from_profiles(profiles);
}

}  // namespace qhash
