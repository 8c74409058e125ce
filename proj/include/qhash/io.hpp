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

// Text formats: parameter documents (JSON), reports (JSON / CSV) and the
// plain density-matrix format.

#pragma once

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhash/measure.hpp"
#include "qhash/optimize.hpp"
#include "qhash/simulate.hpp"
#include "qhash/types.hpp"

namespace qhash {

using Json = nlohmann::ordered_json;

/// {"q": .., "d": .., "m": .., "s": [[..], ..]}
inline Json to_json(const HashParams& params) {
  Json doc;
  doc["q"] = params.q();
  doc["d"] = params.d();
  doc["m"] = params.m();
  doc["s"] = params.rows();
  return doc;
}

/// Parses and validates a parameter document. d and m must agree with the
/// shape of s.
inline HashParams params_from_json(const Json& doc) {
  require(doc.is_object(), "params: document must be an object");
  for (const char* key : {"q", "d", "m", "s"}) {
    require(doc.contains(key), std::string("params: missing key '") + key + "'");
  }
  require(doc["s"].is_array(), "params: 's' must be an array of rows");
  const auto q = doc["q"].get<Index>();
  const auto d = doc["d"].get<Index>();
  const auto m = doc["m"].get<Index>();
  auto rows = doc["s"].get<std::vector<HashParams::Row>>();
  require(static_cast<Index>(rows.size()) == m, "params: 's' must have m rows");
  for (const auto& row : rows) require(static_cast<Index>(row.size()) == d, "params: every row of 's' must have d entries");
  return HashParams(q, std::move(rows));
}

inline HashParams parse_params(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("params: ") + e.what());
  }
  try {
    return params_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("params: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline HashParams load_params(const std::string& path) { return parse_params(read_file(path)); }

inline Json to_json(const SearchReport& report) {
  Json doc;
  doc["params"] = to_json(report.params);
  doc["worst_case_fidelity"] = report.worst_case_fidelity;
  doc["x_star"] = report.x_star;
  doc["evaluations"] = report.evaluations;
  doc["wall_time"] = report.wall_time;
  doc["certified"] = report.certified;
  doc["strategy_used"] = std::string(to_string(report.strategy_used));
  return doc;
}

inline Json to_json(const SearchConfig& config) {
  Json doc;
  doc["strategy"] = std::string(to_string(config.strategy));
  doc["budget"] = config.budget;
  doc["seed"] = config.seed;
  doc["symmetry_reduction"] = config.symmetry_reduction;
  return doc;
}

inline Json to_json(const DetectorModel& model) {
  Json doc;
  doc["eta_signal"] = model.eta_signal;
  doc["eta_idler"] = model.eta_idler;
  doc["dark_rate_signal"] = model.dark_rate_signal;
  doc["dark_rate_idler"] = model.dark_rate_idler;
  doc["coincidence_window"] = model.coincidence_window;
  doc["pair_rate"] = model.pair_rate;
  doc["dead_time_signal"] = model.dead_time_signal;
  doc["dead_time_idler"] = model.dead_time_idler;
  doc["loss_policy"] = std::string(to_string(model.loss_policy));
  doc["max_resends"] = model.max_resends;
  return doc;
}

inline Json to_json(const VerificationReport& report) {
  Json doc;
  doc["requested_shots"] = report.requested_shots;
  doc["shots"] = report.shots;
  doc["accepts"] = report.accepts;
  doc["accept_rate"] = report.accept_rate;
  doc["per_qudit_match_rates"] = report.per_qudit_match_rates;
  doc["attempts"] = report.attempts;
  doc["losses"] = report.losses;
  doc["evaluated"] = report.evaluated;
  doc["discarded_shots"] = report.discarded_shots;
  doc["unresolved_qudits"] = report.unresolved_qudits;
  doc["theoretical_fidelity"] = report.theoretical_fidelity;
  doc["seed"] = report.seed;
  return doc;
}

inline Json to_json(const CalibrationResult& result) {
  Json doc;
  doc["trials"] = result.trials;
  doc["mean_coincidence_rate"] = result.mean_coincidence_rate;
  doc["threshold"] = result.threshold;
  doc["threshold_fraction"] = result.threshold_fraction;
  return doc;
}

/// Formats a double with round-trip precision.
inline std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
  return out.str();
}

/// Writes "# key: value" header lines so a CSV carries the configuration that
/// produced it.
inline void write_csv_header(std::ostream& out, const Json& config) {
  for (const auto& [key, value] : config.items()) out << "# " << key << ": " << value.dump() << '\n';
}

/// Columns d, m, x1, x2, shots, accepts, losses, accept_rate, theoretical, seed.
inline void write_verification_csv(std::ostream& out, const HashParams& params, Index x1, Index x2,
                                   const VerificationReport& report, bool with_header_row = true) {
  if (with_header_row) out << "d,m,x1,x2,shots,accepts,losses,accept_rate,theoretical,seed\n";
  out << params.d() << ',' << params.m() << ',' << x1 << ',' << x2 << ',' << report.shots << ',' << report.accepts
      << ',' << report.losses << ',' << format_double(report.accept_rate) << ','
      << format_double(report.theoretical_fidelity) << ',' << report.seed << '\n';
}

/// Density matrix text format: d, then d x d real parts, then d x d
/// imaginary parts, whitespace separated.
inline DensityMatrix parse_density_matrix(std::istream& in, double trace_tolerance = DensityMatrix::kTraceTolerance) {
  Index d = 0;
  require(static_cast<bool>(in >> d) && d >= 1, "density matrix: missing or invalid dimension");
  DensityMatrix::Matrix entries(d, d);
  std::vector<double> values(static_cast<std::size_t>(2 * d * d));
  for (auto& v : values) require(static_cast<bool>(in >> v), "density matrix: expected 2*d*d numbers");
  std::string extra;
  require(!(in >> extra), "density matrix: trailing data");
  for (Index r = 0; r < d; ++r) {
    for (Index c = 0; c < d; ++c) {
      const auto i = static_cast<std::size_t>(r * d + c);
      entries(r, c) = Complex{values[i], values[i + static_cast<std::size_t>(d * d)]};
    }
  }
  return DensityMatrix(std::move(entries), trace_tolerance);
}

inline DensityMatrix parse_density_matrix(const std::string& text, double trace_tolerance = DensityMatrix::kTraceTolerance) {
  std::istringstream in(text);
  return parse_density_matrix(in, trace_tolerance);
}

}  // namespace qhash
