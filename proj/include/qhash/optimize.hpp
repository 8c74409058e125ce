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

// Search for small-bias sets and for parameter matrices minimizing the
// worst-case collision probability, plus the collision/decoding trade-off.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhash/hashcore.hpp"
#include "qhash/rng.hpp"
#include "qhash/types.hpp"

namespace qhash {

enum class SearchStrategy { exhaustive, random_restart, annealing };

inline std::string_view to_string(SearchStrategy strategy) {
  switch (strategy) {
    case SearchStrategy::exhaustive: return "exhaustive";
    case SearchStrategy::random_restart: return "random-restart";
    case SearchStrategy::annealing: return "annealing";
  }
  return "unknown";
}

inline SearchStrategy parse_strategy(std::string_view name) {
  if (name == "exhaustive") return SearchStrategy::exhaustive;
  if (name == "random-restart") return SearchStrategy::random_restart;
  if (name == "annealing") return SearchStrategy::annealing;
  throw std::invalid_argument("unknown search strategy: " + std::string(name));
}

/// Largest candidate count an exhaustive search will enumerate. Above it the
/// search falls back to annealing and the result is not certified.
inline constexpr std::int64_t kExhaustiveCeiling = 10'000'000;

struct SearchConfig {
  SearchStrategy strategy = SearchStrategy::annealing;
  std::int64_t budget = 400'000;  // candidate evaluations; ignored by a feasible exhaustive search
  std::uint64_t seed = 1;
  bool symmetry_reduction = true;

  void validate() const { require(budget >= 1, "SearchConfig: budget must be at least 1"); }
};

struct SearchReport {
  HashParams params;
  double worst_case_fidelity = 1.0;
  Index x_star = 1;
  std::int64_t evaluations = 0;
  double wall_time = 0.0;  // seconds
  bool certified = false;  // true only for a completed exhaustive enumeration
  SearchStrategy strategy_used = SearchStrategy::exhaustive;
};

namespace detail {

/// C(n, k), saturating at `cap` + 1.
inline std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::int64_t>(std::llround(acc));
}

inline std::int64_t power_capped(std::int64_t base, std::int64_t exp, std::int64_t cap) {
  std::int64_t acc = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (acc > cap / std::max<std::int64_t>(base, 1)) return cap + 1;
    acc *= base;
  }
  return acc;
}

/// Advances `combo` (strictly increasing values in [1, q)) to the next
/// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<Index>& combo, Index q) {
  const auto k = static_cast<Index>(combo.size());
  for (Index i = k - 1; i >= 0; --i) {
    auto& c = combo[static_cast<std::size_t>(i)];
    if (c < q - k + i) {
      ++c;
      for (Index t = i + 1; t < k; ++t) combo[static_cast<std::size_t>(t)] = combo[static_cast<std::size_t>(t - 1)] + 1;
      return true;
    }
  }
  return false;
}

/// Every canonical row {0, c_1 < ... < c_{d-1}} in lexicographic order.
inline std::vector<HashParams::Row> canonical_rows(Index q, Index d) {
  std::vector<HashParams::Row> rows;
  std::vector<Index> combo(static_cast<std::size_t>(d - 1));
  for (Index i = 0; i < d - 1; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
  do {
    HashParams::Row row{0};
    row.insert(row.end(), combo.begin(), combo.end());
    rows.push_back(std::move(row));
  } while (next_combination(combo, q));
  return rows;
}

/// Sorts entries within rows and rows lexicographically. The worst-case
/// collision is invariant under both permutations.
inline std::vector<HashParams::Row> canonicalize(std::vector<HashParams::Row> rows) {
  for (auto& row : rows) std::sort(row.begin(), row.end());
  std::sort(rows.begin(), rows.end());
  return rows;
}

/// Lower fidelity wins; within tie tolerance the lexicographically smaller
/// matrix wins. Associative, so merge order does not matter.
inline bool better_candidate(double fidelity, const std::vector<HashParams::Row>& rows, double best_fidelity,
                             const std::vector<HashParams::Row>& best_rows) {
  if (fidelity < best_fidelity - kTieTolerance) return true;
  if (fidelity > best_fidelity + kTieTolerance) return false;
  return rows < best_rows;
}

/// Largest collision factor of one row over x in [1, q), abandoning the scan
/// once it exceeds `cutoff` (the returned value is then only a lower bound).
inline CollisionPeak row_peak(const PhaseTable& table, std::span<const Index> row, double cutoff) {
  CollisionPeak peak{1, -1.0};
  for (Index x = 1; x < table.modulus(); ++x) {
    const double value = row_collision(table, row, x);
    if (value > peak.fidelity + kTieTolerance) {
      peak = {x, value};
      if (value > cutoff) break;
    }
  }
  return peak;
}

struct Candidate {
  std::vector<HashParams::Row> rows;
  double fidelity = std::numeric_limits<double>::infinity();
  Index x_star = 1;
};

/// Exhaustive minimization over all canonical rows for m = 1, streaming rows
/// instead of storing their profiles.
inline Candidate exhaustive_single_row(Index q, Index d, std::int64_t& evaluations) {
  const PhaseTable table(q);
  Candidate best;
  std::vector<Index> combo(static_cast<std::size_t>(d - 1));
  for (Index i = 0; i < d - 1; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
  HashParams::Row row(static_cast<std::size_t>(d), 0);
  do {
    std::copy(combo.begin(), combo.end(), row.begin() + 1);
    ++evaluations;
    const CollisionPeak peak = row_peak(table, row, best.fidelity + kTieTolerance);
    if (peak.fidelity < best.fidelity - kTieTolerance) best = {{row}, peak.fidelity, peak.x_star};
  } while (next_combination(combo, q));
  return best;
}

/// Exhaustive minimization over m-tuples of canonical rows. With symmetry
/// reduction only non-decreasing row-index tuples (multisets) are visited.
inline Candidate exhaustive_multi_row(Index q, Index d, Index m, bool symmetric, std::int64_t& evaluations) {
  const PhaseTable table(q);
  const auto pool = canonical_rows(q, d);
  std::vector<std::vector<double>> profiles;
  profiles.reserve(pool.size());
  for (const auto& row : pool) profiles.push_back(row_profile(table, row));

  const std::size_t width = static_cast<std::size_t>(q - 1);
  const auto depth = static_cast<std::size_t>(m);
  // partial[t] = product of the profiles of the first t + 1 chosen rows.
  std::vector<std::vector<double>> partial(depth, std::vector<double>(width));
  std::vector<std::size_t> choice(depth, 0);
  Candidate best;

  auto leaf = [&](std::size_t last) {
    ++evaluations;
    const auto& prefix = partial[depth - 2];
    const auto& tail = profiles[last];
    CollisionPeak peak{1, -1.0};
    const double cutoff = best.fidelity + kTieTolerance;
    for (std::size_t i = 0; i < width; ++i) {
      const double value = prefix[i] * tail[i];
      if (value > peak.fidelity + kTieTolerance) {
        peak = {static_cast<Index>(i + 1), value};
        if (value > cutoff) return;
      }
    }
    std::vector<HashParams::Row> rows;
    rows.reserve(depth);
    for (std::size_t t = 0; t + 1 < depth; ++t) rows.push_back(pool[choice[t]]);
    rows.push_back(pool[last]);
    if (better_candidate(peak.fidelity, rows, best.fidelity, best.rows)) best = {std::move(rows), peak.fidelity, peak.x_star};
  };

  // Iterative depth-first walk over row-index tuples.
  auto recurse = [&](auto&& self, std::size_t level, std::size_t start) -> void {
    for (std::size_t r = start; r < pool.size(); ++r) {
      if (level + 1 == depth) {
        leaf(r);
        continue;
      }
      choice[level] = r;
      auto& out = partial[level];
      if (level == 0) {
        out = profiles[r];
      } else {
        const auto& in = partial[level - 1];
        for (std::size_t i = 0; i < width; ++i) out[i] = in[i] * profiles[r][i];
      }
      self(self, level + 1, symmetric ? r : 0);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

/// Mutable search state for the stochastic strategies: rows, their cached
/// collision profiles and the product profile over all rows.
///
/// The search energy is the log of the p-norm of the product profile,
/// (1/p) log sum_x f(x)^p with p = 2^kSoftMaxDoublings. It is a smooth upper
/// bound on log max_x f(x) that also rewards lowering the runner-up peaks.
class RowState {
 public:
  static constexpr int kSoftMaxDoublings = 4;
  static constexpr double kSoftMaxExponent = static_cast<double>(1 << kSoftMaxDoublings);

  RowState(const PhaseTable& table, Index d, Index m, Rng& rng) : table_(&table), d_(d) {
    rows_.reserve(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) rows_.push_back(random_row(rng));
    for (const auto& row : rows_) profiles_.push_back(row_profile(table, row));
    refresh();
  }

  double fidelity() const noexcept { return peak_.fidelity; }
  Index x_star() const noexcept { return peak_.x_star; }
  double energy() const noexcept { return energy_; }
  const std::vector<HashParams::Row>& rows() const noexcept { return rows_; }

  struct Move {
    std::size_t row = 0;
    std::size_t column = 0;
    Index value = 0;
  };

  /// Shifts one non-leading entry by a nonzero step in [-q/2, q/2] mod q,
  /// resampling while the new entry duplicates one already in the row.
  /// Narrower steps (q/8) stall on the d = 4 landscapes.
  Move propose(Rng& rng) const {
    const Index q = table_->modulus();
    const Index width = std::max<Index>(1, q / 2);
    for (;;) {
      Move move;
      move.row = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<Index>(rows_.size()) - 1));
      move.column = static_cast<std::size_t>(uniform_int(rng, 1, d_ - 1));
      Index step = uniform_int(rng, -width, width - 1);
      if (step >= 0) ++step;  // skip 0
      move.value = mod(rows_[move.row][move.column] + step, q);
      const auto& row = rows_[move.row];
      if (std::find(row.begin(), row.end(), move.value) == row.end()) return move;
    }
  }

  /// Applies `move` if the energy of the resulting matrix is at most
  /// `threshold`. The scan over x stops as soon as the partial p-norm
  /// exceeds the threshold, so rejections are usually cheap.
  bool try_move(const Move& move, double threshold) {
    scratch_row_ = rows_[move.row];
    scratch_row_[move.column] = move.value;
    const auto& old_profile = profiles_[move.row];
    const std::size_t width = old_profile.size();
    scratch_profile_.resize(width);
    scratch_total_.resize(width);

    // Sum of (f / reference)^p, compared against the threshold on the same scale.
    const double reference = peak_.fidelity > 0.0 ? peak_.fidelity : 1.0;
    const double limit = std::exp(kSoftMaxExponent * (threshold - std::log(reference)));
    double sum = 0.0;
    // Visit the current worst x first: it is the likeliest to reject.
    const std::size_t first = static_cast<std::size_t>(peak_.x_star - 1);
    for (std::size_t n = 0; n < width; ++n) {
      const std::size_t i = n == 0 ? first : (n <= first ? n - 1 : n);
      const double factor = row_collision(*table_, scratch_row_, static_cast<Index>(i + 1));
      scratch_profile_[i] = factor;
      const double product = factor * others(move.row, i);
      scratch_total_[i] = product;
      sum += soft_power(product / reference);
      if (sum > limit) return false;
    }
    rows_[move.row] = scratch_row_;
    std::swap(profiles_[move.row], scratch_profile_);
    refresh();
    return true;
  }

 private:
  /// Product of all profiles except `row` at index i.
  double others(std::size_t row, std::size_t i) const noexcept {
    const double own = profiles_[row][i];
    if (own > 1e-6) return total_[i] / own;
    double product = 1.0;
    for (std::size_t j = 0; j < profiles_.size(); ++j) {
      if (j != row) product *= profiles_[j][i];
    }
    return product;
  }

  static double soft_power(double r) noexcept {
    for (int i = 0; i < kSoftMaxDoublings; ++i) r *= r;
    return r;
  }

  void refresh() {
    const std::size_t width = profiles_.front().size();
    total_.assign(width, 1.0);
    for (const auto& profile : profiles_) {
      for (std::size_t i = 0; i < width; ++i) total_[i] *= profile[i];
    }
    peak_ = CollisionPeak{1, -1.0};
    for (std::size_t i = 0; i < width; ++i) {
      if (total_[i] > peak_.fidelity + kTieTolerance) peak_ = {static_cast<Index>(i + 1), total_[i]};
    }
    if (peak_.fidelity <= 0.0) {
      energy_ = -std::numeric_limits<double>::infinity();
      return;
    }
    double sum = 0.0;
    for (double f : total_) sum += soft_power(f / peak_.fidelity);
    energy_ = std::log(peak_.fidelity) + std::log(sum) / kSoftMaxExponent;
  }

  HashParams::Row random_row(Rng& rng) const {
    const Index q = table_->modulus();
    std::vector<Index> pool(static_cast<std::size_t>(q - 1));
    for (Index i = 0; i < q - 1; ++i) pool[static_cast<std::size_t>(i)] = i + 1;
    HashParams::Row row{0};
    for (Index k = 0; k < d_ - 1; ++k) {
      const auto pick = static_cast<std::size_t>(uniform_int(rng, k, q - 2));
      std::swap(pool[static_cast<std::size_t>(k)], pool[pick]);
      row.push_back(pool[static_cast<std::size_t>(k)]);
    }
    return row;
  }

  const PhaseTable* table_;
  Index d_;
  std::vector<HashParams::Row> rows_;
  std::vector<std::vector<double>> profiles_;
  std::vector<double> total_;
  CollisionPeak peak_;
  double energy_ = 0.0;
  HashParams::Row scratch_row_;
  std::vector<double> scratch_profile_;
  std::vector<double> scratch_total_;
};

/// Steps per annealing run; the budget is split into independent restarts of
/// this length, each seeded from (seed, restart index).
inline constexpr std::int64_t kAnnealRunLength = 1'000'000;
inline constexpr double kAnnealStartTemperature = 0.1;
inline constexpr double kAnnealEndTemperature = 0.001;

inline void offer(Candidate& best, const RowState& state) {
  auto rows = canonicalize(state.rows());
  if (better_candidate(state.fidelity(), rows, best.fidelity, best.rows)) {
    best = {std::move(rows), state.fidelity(), state.x_star()};
  }
}

/// Exact best response for row `row`: scans every canonical row and returns
/// true if one lowers the worst-case collision, updating `candidate`.
/// x values are visited in decreasing order of the other rows' product so
/// most candidates are rejected after a few terms.
inline bool best_response(const PhaseTable& table, Index d, std::size_t row, Candidate& candidate,
                          std::int64_t& evaluations) {
  const Index q = table.modulus();
  const std::size_t width = static_cast<std::size_t>(q - 1);
  std::vector<double> others(width, 1.0);
  for (std::size_t j = 0; j < candidate.rows.size(); ++j) {
    if (j == row) continue;
    const auto profile = row_profile(table, candidate.rows[j]);
    for (std::size_t i = 0; i < width; ++i) others[i] *= profile[i];
  }
  std::vector<std::size_t> order(width);
  for (std::size_t i = 0; i < width; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return others[a] > others[b]; });

  double best = candidate.fidelity;
  std::optional<HashParams::Row> winner;
  std::vector<Index> combo(static_cast<std::size_t>(d - 1));
  for (Index i = 0; i < d - 1; ++i) combo[static_cast<std::size_t>(i)] = i + 1;
  HashParams::Row trial(static_cast<std::size_t>(d), 0);
  do {
    std::copy(combo.begin(), combo.end(), trial.begin() + 1);
    ++evaluations;
    double peak = 0.0;
    bool rejected = false;
    for (std::size_t i : order) {
      if (others[i] <= peak) break;  // remaining terms cannot exceed the peak
      const double value = others[i] * row_collision(table, trial, static_cast<Index>(i + 1));
      if (value > peak) {
        peak = value;
        if (peak >= best - kTieTolerance) {
          rejected = true;
          break;
        }
      }
    }
    if (!rejected) {
      best = peak;
      winner = trial;
    }
  } while (next_combination(combo, q));
  if (!winner) return false;
  candidate.rows[row] = *winner;
  const CollisionPeak exact = worst_case_collision(HashParams(q, candidate.rows));
  candidate.fidelity = exact.fidelity;
  candidate.x_star = exact.x_star;
  return true;
}

/// Block-coordinate descent with exact per-row best responses until no single
/// row replacement improves the worst-case collision.
inline void polish(const PhaseTable& table, Index d, Candidate& candidate, std::int64_t& evaluations) {
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t row = 0; row < candidate.rows.size(); ++row) {
      improved |= best_response(table, d, row, candidate, evaluations);
    }
  }
  candidate.rows = canonicalize(std::move(candidate.rows));
}

/// Number of best annealing runs handed to the exact polish.
inline constexpr std::size_t kPolishedRuns = 3;

/// Simulated annealing with a geometric temperature schedule. Metropolis
/// acceptance is decided by drawing u first and accepting iff the new energy
/// is at most E - T log u, which permits early rejection. The best results of
/// the kPolishedRuns best runs are then polished by exact coordinate descent.
inline Candidate anneal(Index q, Index d, Index m, const SearchConfig& config, std::int64_t& evaluations) {
  const PhaseTable table(q);
  std::vector<Candidate> finals;
  const std::int64_t run_length = std::min(config.budget, kAnnealRunLength);
  const double cooling = std::log(kAnnealEndTemperature / kAnnealStartTemperature);
  for (std::uint64_t restart = 0; evaluations < config.budget; ++restart) {
    Rng rng(derive_seed(config.seed, {restart}));
    RowState state(table, d, m, rng);
    ++evaluations;
    Candidate run_best;
    offer(run_best, state);
    const std::int64_t steps = std::min(run_length, config.budget - evaluations);
    for (std::int64_t step = 0; step < steps; ++step) {
      const double progress = static_cast<double>(step) / static_cast<double>(steps);
      const double temperature = kAnnealStartTemperature * std::exp(cooling * progress);
      const auto move = state.propose(rng);
      const double u = 1.0 - uniform01(rng);  // (0, 1]
      ++evaluations;
      if (state.try_move(move, state.energy() - temperature * std::log(u)) &&
          state.fidelity() < run_best.fidelity + kTieTolerance) {
        offer(run_best, state);
      }
    }
    finals.push_back(std::move(run_best));
  }

  std::sort(finals.begin(), finals.end(), [](const Candidate& a, const Candidate& b) {
    return better_candidate(a.fidelity, a.rows, b.fidelity, b.rows);
  });
  finals.erase(std::unique(finals.begin(), finals.end(),
                           [](const Candidate& a, const Candidate& b) { return a.rows == b.rows; }),
               finals.end());
  Candidate best;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    Candidate candidate = finals[i];
    if (i < kPolishedRuns) polish(table, d, candidate, evaluations);
    if (better_candidate(candidate.fidelity, candidate.rows, best.fidelity, best.rows)) best = std::move(candidate);
  }
  return best;
}

/// Hill climbing on the same energy with random restarts after a run of
/// proposals that fail to lower the worst-case collision.
inline Candidate hill_climb(Index q, Index d, Index m, const SearchConfig& config, std::int64_t& evaluations) {
  const PhaseTable table(q);
  const std::int64_t patience = std::max<std::int64_t>(2000, 500 * m * d);
  Candidate best;
  for (std::uint64_t restart = 0; evaluations < config.budget; ++restart) {
    Rng rng(derive_seed(config.seed, {restart}));
    RowState state(table, d, m, rng);
    ++evaluations;
    offer(best, state);
    std::int64_t stale = 0;
    while (evaluations < config.budget && stale < patience) {
      const auto move = state.propose(rng);
      ++evaluations;
      const double before = state.fidelity();
      if (state.try_move(move, state.energy()) && state.fidelity() < before - kTieTolerance) {
        stale = 0;
        offer(best, state);
      } else {
        ++stale;
      }
    }
  }
  return best;
}

inline void check_dimensions(Index q, Index d, Index m) {
  require(q >= 2, "q must be at least 2");
  require(d >= 2, "d must be at least 2");
  require(d <= q, "d must not exceed q");
  require(m >= 1, "m must be at least 1");
}

/// Number of candidates an exhaustive search would visit, capped.
inline std::int64_t exhaustive_count(Index q, Index d, Index m, bool symmetric) {
  const std::int64_t pool = binomial_capped(q - 1, d - 1, kExhaustiveCeiling);
  if (pool > kExhaustiveCeiling) return kExhaustiveCeiling + 1;
  return symmetric ? binomial_capped(pool + m - 1, m, kExhaustiveCeiling) : power_capped(pool, m, kExhaustiveCeiling);
}

}  // namespace detail

/// Minimizes the worst-case collision probability over canonical parameter
/// matrices. Exhaustive search is exact and certified when the candidate
/// count is at most kExhaustiveCeiling; otherwise it falls back to annealing
/// under `config.budget`.
inline SearchReport optimize_params(Index q, Index d, Index m, const SearchConfig& config) {
  detail::check_dimensions(q, d, m);
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  SearchStrategy used = config.strategy;
  bool certified = false;
  if (used == SearchStrategy::exhaustive) {
    if (detail::exhaustive_count(q, d, m, config.symmetry_reduction) <= kExhaustiveCeiling) {
      certified = true;
    } else {
      used = SearchStrategy::annealing;
    }
  }

  std::int64_t evaluations = 0;
  detail::Candidate best;
  switch (used) {
    case SearchStrategy::exhaustive:
      best = m == 1 ? detail::exhaustive_single_row(q, d, evaluations)
                    : detail::exhaustive_multi_row(q, d, m, config.symmetry_reduction, evaluations);
      break;
    case SearchStrategy::annealing:
      best = detail::anneal(q, d, m, config, evaluations);
      break;
    case SearchStrategy::random_restart:
      best = detail::hill_climb(q, d, m, config, evaluations);
      break;
  }

  HashParams params(q, config.symmetry_reduction ? detail::canonicalize(best.rows) : best.rows);
  // Report the exact objective of the returned matrix rather than the search's
  // running value.
  const CollisionPeak peak = worst_case_collision(params);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return SearchReport{std::move(params), peak.fidelity, peak.x_star, evaluations, elapsed.count(), certified, used};
}

/// Smallest-bias canonical set of size d in Z_q. With the exhaustive strategy
/// all C(q-1, d-1) canonical sets are scanned when that count is at most
/// kExhaustiveCeiling and the result is certified globally optimal.
inline BiasedSet best_biased_set(Index q, Index d, const SearchConfig& config) {
  require(q >= 2, "best_biased_set: q must be at least 2");
  require(d >= 2, "best_biased_set: d must be at least 2");
  require(d <= q, "best_biased_set: d must not exceed q");
  config.validate();
  if (d == q) {
    std::vector<Index> all(static_cast<std::size_t>(q));
    for (Index i = 0; i < q; ++i) all[static_cast<std::size_t>(i)] = i;
    return {q, std::move(all), 0.0, true};
  }
  const SearchReport report = optimize_params(q, d, 1, config);
  auto elements = report.params.row(0);
  std::sort(elements.begin(), elements.end());
  return {q, std::move(elements), std::sqrt(report.worst_case_fidelity), report.certified};
}

/// Worst-case collision of m qudits that all reuse the best single biased set:
/// (epsilon^2)^m.
inline double epsilon_biased_bound(Index q, Index d, Index m, const SearchConfig& config) {
  detail::check_dimensions(q, d, m);
  const BiasedSet set = best_biased_set(q, d, config);
  return std::pow(set.epsilon * set.epsilon, static_cast<double>(m));
}

struct DecodingProbability {
  double value = 0.0;       // d^m / q, unclamped
  bool exceeds_one = false;  // the scheme has more state space than inputs
};

inline DecodingProbability decoding_probability(Index q, Index d, Index m) {
  detail::check_dimensions(q, d, m);
  const double value = std::pow(static_cast<double>(d), static_cast<double>(m)) / static_cast<double>(q);
  return {value, value > 1.0};
}

inline DecodingProbability decoding_probability(const HashParams& params) {
  return decoding_probability(params.q(), params.d(), params.m());
}

struct TradeoffPoint {
  Index m = 0;
  double collision = 1.0;
  double decoding = 0.0;
};

struct TradeoffEntry {
  Index d = 0;
  std::vector<TradeoffPoint> feasible;  // ascending m

  std::optional<Index> fewest_qudits() const {
    if (feasible.empty()) return std::nullopt;
    return feasible.front().m;
  }
};

/// For each d, the m <= m_max whose optimized worst-case collision and
/// decoding probability d^m/q both meet their limits. The optimizer is only
/// run for m that already satisfy the decoding limit. Each (d, m) search uses
/// its own seed derived from (config.seed, d, m).
inline std::vector<TradeoffEntry> tradeoff(Index q, std::span<const Index> d_list, Index m_max, double collision_limit,
                                           double decoding_limit, const SearchConfig& config) {
  require(collision_limit > 0.0 && collision_limit <= 1.0, "tradeoff: collision limit must be in (0, 1]");
  require(decoding_limit > 0.0 && decoding_limit <= 1.0, "tradeoff: decoding limit must be in (0, 1]");
  require(m_max >= 1, "tradeoff: m_max must be at least 1");
  std::vector<TradeoffEntry> result;
  for (Index d : d_list) {
    TradeoffEntry entry{d, {}};
    for (Index m = 1; m <= m_max; ++m) {
      const auto decoding = decoding_probability(q, d, m);
      if (decoding.value > decoding_limit) continue;
      SearchConfig sub = config;
      sub.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m)});
      const double collision = optimize_params(q, d, m, sub).worst_case_fidelity;
      if (collision <= collision_limit) entry.feasible.push_back({m, collision, decoding.value});
    }
    result.push_back(std::move(entry));
  }
  return result;
}

}  // namespace qhash
