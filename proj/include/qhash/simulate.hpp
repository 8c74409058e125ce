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

// Monte Carlo simulation of single-photon hash verification with a heralded
// pair source and imperfect detectors.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhash/hashcore.hpp"
#include "qhash/measure.hpp"
#include "qhash/optimize.hpp"
#include "qhash/rng.hpp"
#include "qhash/types.hpp"

namespace qhash {

/// What happens to a qudit that produced no coincidence.
enum class LossPolicy {
  resend,          // send the qudit again, up to max_resends times
  count_as_error,  // the qudit counts as a mismatch
  discard,         // the whole shot is dropped
};

inline std::string_view to_string(LossPolicy policy) {
  switch (policy) {
    case LossPolicy::resend: return "resend";
    case LossPolicy::count_as_error: return "count-as-error";
    case LossPolicy::discard: return "discard";
  }
  return "unknown";
}

inline LossPolicy parse_loss_policy(std::string_view name) {
  if (name == "resend") return LossPolicy::resend;
  if (name == "count-as-error") return LossPolicy::count_as_error;
  if (name == "discard") return LossPolicy::discard;
  throw std::invalid_argument("unknown loss policy: " + std::string(name));
}

/// Heralded single-photon source with one idler and one signal detector
/// chain. Defaults are the free-running detectors of the reference setup
/// (45% / 10% efficiency, 2 kHz / 15 kHz dark counts, 150 ns / 16 us dead
/// time); window and pair rate are configuration.
struct DetectorModel {
  double eta_signal = 0.45;
  double eta_idler = 0.10;
  double dark_rate_signal = 2e3;   // Hz
  double dark_rate_idler = 15e3;   // Hz
  double coincidence_window = 1e-9;  // s
  double pair_rate = 1e5;          // Hz
  double dead_time_signal = 150e-9;  // s
  double dead_time_idler = 16e-6;    // s
  LossPolicy loss_policy = LossPolicy::resend;
  std::int64_t max_resends = 100;

  static DetectorModel ideal() {
    DetectorModel model;
    model.eta_signal = 1.0;
    model.eta_idler = 1.0;
    model.dark_rate_signal = 0.0;
    model.dark_rate_idler = 0.0;
    model.dead_time_signal = 0.0;
    model.dead_time_idler = 0.0;
    return model;
  }

  void validate() const {
    require(eta_signal >= 0.0 && eta_signal <= 1.0, "DetectorModel: eta_signal must be in [0, 1]");
    require(eta_idler >= 0.0 && eta_idler <= 1.0, "DetectorModel: eta_idler must be in [0, 1]");
    require(dark_rate_signal >= 0.0 && dark_rate_idler >= 0.0, "DetectorModel: dark rates must be non-negative");
    require(pair_rate >= 0.0, "DetectorModel: pair rate must be non-negative");
    require(dead_time_signal >= 0.0 && dead_time_idler >= 0.0, "DetectorModel: dead times must be non-negative");
    require(coincidence_window > 0.0, "DetectorModel: coincidence window must be positive");
    require(max_resends >= 0, "DetectorModel: max_resends must be non-negative");
  }
};

/// Per-attempt click probabilities derived from a DetectorModel.
///
/// Dead time is first order: a detector is unavailable for the fraction
/// (click rate x dead time) of the time. Accidental clicks have probability
/// dark rate x coincidence window and are independent of the photon.
struct ClickModel {
  double signal_true = 1.0;
  double signal_dark = 0.0;
  double idler_true = 1.0;
  double idler_dark = 0.0;

  static ClickModel from(const DetectorModel& model) {
    model.validate();
    const auto unavailable = [&](double eta, double dark, double dead) {
      return std::clamp((model.pair_rate * eta + dark) * dead, 0.0, 1.0);
    };
    ClickModel clicks;
    clicks.signal_true =
        model.eta_signal * (1.0 - unavailable(model.eta_signal, model.dark_rate_signal, model.dead_time_signal));
    clicks.idler_true =
        model.eta_idler * (1.0 - unavailable(model.eta_idler, model.dark_rate_idler, model.dead_time_idler));
    clicks.signal_dark = std::clamp(model.dark_rate_signal * model.coincidence_window, 0.0, 1.0);
    clicks.idler_dark = std::clamp(model.dark_rate_idler * model.coincidence_window, 0.0, 1.0);
    return clicks;
  }
};

namespace detail {

/// Cumulative outcome distribution with negligible entries snapped to zero so
/// a certain outcome is sampled with probability exactly 1.
inline std::vector<double> cumulative(std::span<const double> probabilities) {
  std::vector<double> cdf;
  cdf.reserve(probabilities.size());
  double total = 0.0;
  for (double p : probabilities) {
    total += p < 1e-14 ? 0.0 : p;
    cdf.push_back(total);
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  return cdf;
}

inline std::size_t sample_channel(std::span<const double> cdf, Rng& rng) {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

inline constexpr std::int64_t kNoClick = -1;

/// One heralded attempt: returns the detection channel of a signal/idler
/// coincidence, or kNoClick. A dark signal click lands in a uniform channel;
/// a true click takes precedence over a dark one.
inline std::int64_t detect(std::span<const double> cdf, const ClickModel& clicks, Rng& rng) {
  const bool herald = bernoulli(rng, clicks.idler_true) || bernoulli(rng, clicks.idler_dark);
  std::int64_t channel = kNoClick;
  if (bernoulli(rng, clicks.signal_true)) {
    channel = static_cast<std::int64_t>(sample_channel(cdf, rng));
  } else if (bernoulli(rng, clicks.signal_dark)) {
    channel = uniform_int(rng, 0, static_cast<std::int64_t>(cdf.size()) - 1);
  }
  return herald ? channel : kNoClick;
}

/// Outcome distributions of every qudit of psi(x1) measured in the basis
/// built for x2.
inline std::vector<std::vector<double>> channel_cdfs(const HashParams& params, Index x1, Index x2) {
  std::vector<std::vector<double>> cdfs;
  for (Index j = 0; j < params.m(); ++j) {
    const auto probabilities = outcome_probabilities(qudit_hash_state(params, j, x1), orthogonal_basis(params, j, x2));
    cdfs.push_back(cumulative(probabilities));
  }
  return cdfs;
}

/// Shots per deterministic substream; substream c is seeded from (seed, c)
/// so results do not depend on how chunks are scheduled.
inline constexpr std::int64_t kShotChunk = 4096;

}  // namespace detail

struct VerificationReport {
  std::int64_t requested_shots = 0;
  std::int64_t shots = 0;  // shots with a verdict (requested minus discarded)
  std::int64_t accepts = 0;
  double accept_rate = 0.0;  // accepts / shots
  std::vector<double> per_qudit_match_rates;
  std::int64_t attempts = 0;   // qudit transmissions
  std::int64_t losses = 0;     // transmissions without a coincidence
  std::int64_t evaluated = 0;  // transmissions with a coincidence
  std::int64_t discarded_shots = 0;
  std::int64_t unresolved_qudits = 0;  // qudits still lost after max_resends
  double theoretical_fidelity = 0.0;
  std::uint64_t seed = 0;

  /// Majority-of-shots verdict: "x1 = x2" iff more than half the shots accept.
  bool verdict_equal() const noexcept { return shots > 0 && 2 * accepts > shots; }
};

/// Runs `shots` independent verifications of psi(x1) against x2. A shot
/// accepts iff every qudit is detected in the target channel.
inline VerificationReport simulate_verification(const HashParams& params, Index x1, Index x2,
                                                const DetectorModel& model, std::int64_t shots, std::uint64_t seed) {
  require(shots >= 1, "simulate_verification: shots must be at least 1");
  require(x1 >= 0 && x1 < params.q() && x2 >= 0 && x2 < params.q(), "simulate_verification: input outside [0, q)");
  const ClickModel clicks = ClickModel::from(model);
  const auto cdfs = detail::channel_cdfs(params, x1, x2);
  const auto m = static_cast<std::size_t>(params.m());

  VerificationReport report;
  report.requested_shots = shots;
  report.seed = seed;
  report.theoretical_fidelity = hash_fidelity(params, x1, x2);
  std::vector<std::int64_t> matches(m, 0);
  std::vector<std::int64_t> measured(m, 0);

  for (std::int64_t chunk_start = 0, chunk = 0; chunk_start < shots; chunk_start += detail::kShotChunk, ++chunk) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(chunk)}));
    const std::int64_t chunk_end = std::min(shots, chunk_start + detail::kShotChunk);
    for (std::int64_t shot = chunk_start; shot < chunk_end; ++shot) {
      bool accept = true;
      bool discarded = false;
      for (std::size_t j = 0; j < m && !discarded; ++j) {
        std::int64_t channel = detail::kNoClick;
        for (std::int64_t tries = 0;; ++tries) {
          ++report.attempts;
          channel = detail::detect(cdfs[j], clicks, rng);
          if (channel != detail::kNoClick) {
            ++report.evaluated;
            break;
          }
          ++report.losses;
          if (model.loss_policy != LossPolicy::resend || tries >= model.max_resends) break;
        }
        if (channel == detail::kNoClick) {
          if (model.loss_policy == LossPolicy::discard) {
            discarded = true;
          } else {
            if (model.loss_policy == LossPolicy::resend) ++report.unresolved_qudits;
            accept = false;
          }
          continue;
        }
        ++measured[j];
        if (channel == 0) {
          ++matches[j];
        } else {
          accept = false;
        }
      }
      if (discarded) {
        ++report.discarded_shots;
        continue;
      }
      ++report.shots;
      if (accept) ++report.accepts;
    }
  }

  report.accept_rate = report.shots > 0 ? static_cast<double>(report.accepts) / static_cast<double>(report.shots) : 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    report.per_qudit_match_rates.push_back(
        measured[j] > 0 ? static_cast<double>(matches[j]) / static_cast<double>(measured[j]) : 0.0);
  }
  return report;
}

struct CalibrationResult {
  std::int64_t trials = 0;
  double mean_coincidence_rate = 0.0;  // Hz
  double threshold = 0.0;              // Hz
  double threshold_fraction = 1.0;
  std::vector<double> trial_rates;     // Hz
};

/// Target-channel coincidence rate (Hz) when projecting psi(x1) onto the
/// basis for x2, from `pairs` heralded attempts spread round-robin over the m
/// qudits.
inline double coincidence_rate(const HashParams& params, Index x1, Index x2, const DetectorModel& model,
                               std::int64_t pairs, std::uint64_t seed) {
  require(pairs >= 1, "coincidence_rate: pairs must be at least 1");
  const ClickModel clicks = ClickModel::from(model);
  const auto cdfs = detail::channel_cdfs(params, x1, x2);
  Rng rng(seed);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < pairs; ++i) {
    const auto& cdf = cdfs[static_cast<std::size_t>(i % params.m())];
    if (detail::detect(cdf, clicks, rng) == 0) ++hits;
  }
  return model.pair_rate * static_cast<double>(hits) / static_cast<double>(pairs);
}

inline constexpr std::int64_t kDefaultCalibrationTrials = 200;
inline constexpr std::int64_t kDefaultPairsPerTrial = 10'000;

/// Equal-state calibration: averages the target-channel coincidence rate of
/// psi(x) against x over `trials` runs and places the yes/no threshold at
/// threshold_fraction x mean.
inline CalibrationResult calibrate(const HashParams& params, Index x, const DetectorModel& model,
                                   std::int64_t trials = kDefaultCalibrationTrials, std::uint64_t seed = 1,
                                   double threshold_fraction = 1.0,
                                   std::int64_t pairs_per_trial = kDefaultPairsPerTrial) {
  require(trials >= 1, "calibrate: trials must be at least 1");
  require(threshold_fraction > 0.0, "calibrate: threshold fraction must be positive");
  require(x >= 0 && x < params.q(), "calibrate: x outside [0, q)");
  CalibrationResult result;
  result.trials = trials;
  result.threshold_fraction = threshold_fraction;
  double sum = 0.0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const double rate =
        coincidence_rate(params, x, x, model, pairs_per_trial, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    result.trial_rates.push_back(rate);
    sum += rate;
  }
  result.mean_coincidence_rate = sum / static_cast<double>(trials);
  result.threshold = threshold_fraction * result.mean_coincidence_rate;
  return result;
}

/// Rate-threshold verdict: "x1 = x2" iff the measured rate reaches the
/// calibrated threshold.
inline bool rate_verdict_equal(const CalibrationResult& calibration, double measured_rate) noexcept {
  return measured_rate >= calibration.threshold;
}

struct CurveRow {
  Index d = 0;
  Index m = 0;
  Index x_star = 1;
  double theoretical = 0.0;
  double empirical = 0.0;
  double standard_error = 0.0;  // binomial standard error at the theoretical rate
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<HashParams::Row> rows;
};

/// Worst-case collision curve: for each m, optimized parameters, their exact
/// worst-case fidelity and the simulated acceptance rate of psi(x*) against 0.
/// Search and simulation seeds are derived from (seed, d, m).
inline std::vector<CurveRow> estimate_collision_curve(Index q, Index d, std::span<const Index> m_values,
                                                      const DetectorModel& model, std::int64_t shots,
                                                      const SearchConfig& config) {
  require(shots >= 1, "estimate_collision_curve: shots must be at least 1");
  std::vector<CurveRow> rows;
  for (Index m : m_values) {
    SearchConfig sub = config;
    sub.seed = derive_seed(config.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m)});
    const SearchReport search = optimize_params(q, d, m, sub);
    const std::uint64_t sim_seed = derive_seed(sub.seed, {0x5157ULL});
    const auto report = simulate_verification(search.params, search.x_star, 0, model, shots, sim_seed);
    const double p = search.worst_case_fidelity;
    rows.push_back({d, m, search.x_star, p, report.accept_rate,
                    std::sqrt(p * (1.0 - p) / static_cast<double>(report.shots > 0 ? report.shots : 1)), report.shots,
                    sim_seed, search.params.rows()});
  }
  return rows;
}

}  // namespace qhash
