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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace qhash {

using Index = std::int64_t;
using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Reduces `value` into [0, modulus).
constexpr Index mod(Index value, Index modulus) noexcept {
  const Index r = value % modulus;
  return r < 0 ? r + modulus : r;
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument(message);
}

/// Table of the q-th roots of unity, exp(2*pi*i*k/q) for k in [0, q).
///
/// Every phase in this library is an integer index modulo q; complex values are
/// only looked up here, so products of many factors never accumulate angle
/// rounding.
class PhaseTable {
 public:
  explicit PhaseTable(Index q) : q_(q) {
    require(q >= 1, "PhaseTable: q must be positive");
    cos_.resize(static_cast<std::size_t>(q));
    sin_.resize(static_cast<std::size_t>(q));
    for (Index k = 0; k < q; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
      cos_[static_cast<std::size_t>(k)] = std::cos(angle);
      sin_[static_cast<std::size_t>(k)] = std::sin(angle);
    }
  }

  Index modulus() const noexcept { return q_; }

  // k must already be reduced into [0, q).
  double cos_at(Index k) const noexcept { return cos_[static_cast<std::size_t>(k)]; }
  double sin_at(Index k) const noexcept { return sin_[static_cast<std::size_t>(k)]; }

  Complex root(Index k) const noexcept {
    const Index r = mod(k, q_);
    return {cos_at(r), sin_at(r)};
  }

 private:
  Index q_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Exact phase-index form of an equal-weight qudit state:
/// amplitude_k = exp(2*pi*i*phase_index_k/q) / sqrt(d).
struct PhaseIndices {
  Index q = 1;
  std::vector<Index> indices;

  bool operator==(const PhaseIndices&) const = default;
};

/// A d-dimensional unit vector, optionally carrying its exact phase-index form.
class QuditState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  static QuditState from_amplitudes(Amplitudes amplitudes) {
    require(!amplitudes.empty(), "QuditState: dimension must be positive");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) norm2 += std::norm(a);
    require(std::abs(norm2 - 1.0) <= kNormTolerance, "QuditState: amplitudes are not unit norm");
    return QuditState(std::move(amplitudes), std::nullopt);
  }

  static QuditState from_phases(Index q, std::vector<Index> indices) {
    require(q >= 1, "QuditState: q must be positive");
    require(!indices.empty(), "QuditState: dimension must be positive");
    const PhaseTable table(q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(indices.size()));
    Amplitudes amplitudes;
    amplitudes.reserve(indices.size());
    for (auto& k : indices) {
      k = mod(k, q);
      amplitudes.push_back(scale * table.root(k));
    }
    return QuditState(std::move(amplitudes), PhaseIndices{q, std::move(indices)});
  }

  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const noexcept { return amplitudes_; }
  const std::optional<PhaseIndices>& exact() const noexcept { return exact_; }

  /// <this|other>, conjugate-linear in the left argument.
  Complex inner(const QuditState& other) const {
    require(dimension() == other.dimension(), "QuditState::inner: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < amplitudes_.size(); ++k) {
      acc += std::conj(amplitudes_[k]) * other.amplitudes_[k];
    }
    return acc;
  }

  double norm() const noexcept {
    double norm2 = 0.0;
    for (const auto& a : amplitudes_) norm2 += std::norm(a);
    return std::sqrt(norm2);
  }

 private:
  QuditState(Amplitudes amplitudes, std::optional<PhaseIndices> exact)
      : amplitudes_(std::move(amplitudes)), exact_(std::move(exact)) {}

  Amplitudes amplitudes_;
  std::optional<PhaseIndices> exact_;
};

/// Ordered product of m qudit states. No entangled representation exists.
struct QuantumHash {
  std::vector<QuditState> qudits;

  std::size_t size() const noexcept { return qudits.size(); }
};

/// Phase parameters of a multiqudit hash over Z_q.
///
/// Rows are canonical: the first entry is 0 and entries within a row are
/// pairwise distinct. Any set can be brought to this form with
/// `normalize_set` without changing its bias.
class HashParams {
 public:
  using Row = std::vector<Index>;

  HashParams(Index q, std::vector<Row> rows) : q_(q), rows_(std::move(rows)) {
    require(q_ >= 2, "HashParams: q must be at least 2");
    require(!rows_.empty(), "HashParams: m must be at least 1");
    d_ = static_cast<Index>(rows_.front().size());
    require(d_ >= 2, "HashParams: d must be at least 2");
    require(d_ <= q_, "HashParams: d must not exceed q");
    for (const auto& row : rows_) {
      require(static_cast<Index>(row.size()) == d_, "HashParams: every row must have d entries");
      require(row.front() == 0, "HashParams: first entry of every row must be 0");
      std::unordered_set<Index> seen;
      for (Index s : row) {
        require(s >= 0 && s < q_, "HashParams: entries must lie in [0, q)");
        require(seen.insert(s).second, "HashParams: entries within a row must be distinct");
      }
    }
  }

  Index q() const noexcept { return q_; }
  Index d() const noexcept { return d_; }
  Index m() const noexcept { return static_cast<Index>(rows_.size()); }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(Index j) const {
    require(j >= 0 && j < m(), "HashParams::row: index out of range");
    return rows_[static_cast<std::size_t>(j)];
  }

  bool operator==(const HashParams&) const = default;

 private:
  Index q_;
  Index d_ = 0;
  std::vector<Row> rows_;
};

}  // namespace qhash
