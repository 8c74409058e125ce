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

// Brute-force reference implementations used only by tests. They build state
// vectors from floating-point angles and enumerate every candidate directly,
// sharing no code path with the library's phase-index arithmetic.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

namespace qhash::oracle {

using Row = std::vector<std::int64_t>;
using Vec = std::vector<std::complex<double>>;

inline Vec state(const Row& row, std::int64_t x, std::int64_t q) {
  Vec v;
  const double scale = 1.0 / std::sqrt(static_cast<double>(row.size()));
  for (auto s : row) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) * static_cast<double>(x) / static_cast<double>(q);
    v.push_back(scale * std::exp(std::complex<double>(0.0, angle)));
  }
  return v;
}

inline std::complex<double> inner(const Vec& a, const Vec& b) {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

/// |<psi(x1)|psi(x2)>|^2 as a product of explicit per-qudit overlaps.
inline double fidelity(const std::vector<Row>& rows, std::int64_t x1, std::int64_t x2, std::int64_t q) {
  double f = 1.0;
  for (const auto& row : rows) f *= std::norm(inner(state(row, x1, q), state(row, x2, q)));
  return f;
}

inline double worst_case(const std::vector<Row>& rows, std::int64_t q) {
  double best = 0.0;
  for (std::int64_t x = 1; x < q; ++x) best = std::max(best, fidelity(rows, x, 0, q));
  return best;
}

inline double bias(const Row& set, std::int64_t x, std::int64_t q) {
  std::complex<double> acc = 0.0;
  for (auto s : set) {
    acc += std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * static_cast<double>(s * x) / static_cast<double>(q)));
  }
  return std::abs(acc) / static_cast<double>(set.size());
}

/// All rows {0, c_1 < ... < c_{d-1}}, generated recursively.
inline std::vector<Row> canonical_rows(std::int64_t q, std::int64_t d) {
  std::vector<Row> out;
  Row current{0};
  auto extend = [&](auto&& self, std::int64_t next) -> void {
    if (static_cast<std::int64_t>(current.size()) == d) {
      out.push_back(current);
      return;
    }
    for (std::int64_t v = next; v < q; ++v) {
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  extend(extend, 1);
  return out;
}

struct OracleOptimum {
  double fidelity = std::numeric_limits<double>::infinity();
  std::vector<std::vector<Row>> argmins;  // every ordered tuple within 1e-12 of the optimum
};

/// Minimum worst-case collision over every ordered m-tuple of canonical rows
/// (no symmetry reduction).
inline OracleOptimum full_enumeration(std::int64_t q, std::int64_t d, std::int64_t m) {
  const auto pool = canonical_rows(q, d);
  OracleOptimum result;
  std::vector<std::size_t> index(static_cast<std::size_t>(m), 0);
  for (;;) {
    std::vector<Row> rows;
    for (auto i : index) rows.push_back(pool[i]);
    const double value = worst_case(rows, q);
    if (value < result.fidelity - 1e-12) {
      result.fidelity = value;
      result.argmins.clear();
    }
    if (std::abs(value - result.fidelity) <= 1e-12) result.argmins.push_back(rows);
    std::size_t k = 0;
    while (k < index.size() && ++index[k] == pool.size()) index[k++] = 0;
    if (k == index.size()) break;
  }
  return result;
}

/// Largest eigenvalue of a Hermitian matrix by power iteration on M + I
/// (shifted so the dominant eigenvalue is the largest one).
inline double largest_eigenvalue(const std::vector<std::vector<std::complex<double>>>& m) {
  const std::size_t n = m.size();
  Vec v(n, 1.0);
  v[0] = {1.0, 0.3};
  double lambda = 0.0;
  for (int iter = 0; iter < 20000; ++iter) {
    Vec w(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) w[r] += m[r][c] * v[c];
      w[r] += v[r];
    }
    double norm = 0.0;
    for (auto& z : w) norm += std::norm(z);
    norm = std::sqrt(norm);
    for (auto& z : w) z /= norm;
    v = w;
    lambda = norm - 1.0;
  }
  return lambda;
}

}  // namespace qhash::oracle
