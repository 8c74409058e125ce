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

// qhash command-line front end. Exit codes: 0 success or "equal" verdict,
// 1 "different" verdict, 2 usage or data error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhash/io.hpp"
#include "qhash/table.hpp"

namespace {

using namespace qhash;

constexpr int kExitOk = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

struct SearchOptions {
  std::string strategy;  // empty: per-command default
  std::int64_t budget = 0;  // 0: per-command default
  bool no_symmetry = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--strategy", strategy, "exhaustive | random-restart | annealing")
        ->check(CLI::IsMember({"exhaustive", "random-restart", "annealing"}));
    cmd->add_option("--budget", budget, "candidate evaluations for stochastic search")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-symmetry", no_symmetry, "enumerate ordered row tuples");
  }

  SearchConfig resolve(SearchConfig base, std::uint64_t seed) const {
    if (!strategy.empty()) base.strategy = parse_strategy(strategy);
    if (budget > 0) base.budget = budget;
    base.symmetry_reduction = !no_symmetry;
    base.seed = seed;
    return base;
  }
};

struct DetectorOptions {
  DetectorModel model;
  std::string loss_policy = "resend";
  bool ideal = false;

  void add(CLI::App* cmd) {
    cmd->add_flag("--ideal", ideal, "unit efficiency, no dark counts, no dead time (overrides other detector flags)");
    cmd->add_option("--eta-signal", model.eta_signal)->capture_default_str();
    cmd->add_option("--eta-idler", model.eta_idler)->capture_default_str();
    cmd->add_option("--dark-rate-signal", model.dark_rate_signal, "Hz")->capture_default_str();
    cmd->add_option("--dark-rate-idler", model.dark_rate_idler, "Hz")->capture_default_str();
    cmd->add_option("--coincidence-window", model.coincidence_window, "s")->capture_default_str();
    cmd->add_option("--pair-rate", model.pair_rate, "Hz")->capture_default_str();
    cmd->add_option("--dead-time-signal", model.dead_time_signal, "s")->capture_default_str();
    cmd->add_option("--dead-time-idler", model.dead_time_idler, "s")->capture_default_str();
    cmd->add_option("--loss-policy", loss_policy)
        ->check(CLI::IsMember({"resend", "count-as-error", "discard"}))
        ->capture_default_str();
    cmd->add_option("--max-resends", model.max_resends)->capture_default_str();
  }

  DetectorModel resolve() const {
    DetectorModel out = model;
    out.loss_policy = parse_loss_policy(loss_policy);
    if (ideal) {
      DetectorModel clean = DetectorModel::ideal();
      clean.loss_policy = out.loss_policy;
      clean.max_resends = out.max_resends;
      clean.pair_rate = out.pair_rate;
      clean.coincidence_window = out.coincidence_window;
      out = clean;
    }
    out.validate();
    return out;
  }
};

/// Destination for a command's output: a file when --output is given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      require(static_cast<bool>(*file_), "cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-', 1);
    try {
      if (dash != std::string::npos) {
        const Index lo = std::stoll(item.substr(0, dash));
        const Index hi = std::stoll(item.substr(dash + 1));
        require(lo <= hi, "bad range: " + item);
        for (Index v = lo; v <= hi; ++v) out.push_back(v);
      } else {
        out.push_back(std::stoll(item));
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("not an integer list: " + text);
    }
  }
  require(!out.empty(), "empty integer list");
  return out;
}

Json detector_json(const DetectorModel& model) { return to_json(model); }

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

// --- table -----------------------------------------------------------------

int run_table(Index q, const std::string& d_text, const std::string& m_text, const SearchOptions& search,
              std::uint64_t seed, const std::string& output) {
  std::vector<std::pair<Index, Index>> cells;
  const auto ds = parse_index_list(d_text);
  if (m_text.empty()) {
    require(q == kReferenceModulus, "table: --m is required unless q = 256");
    for (const auto& row : kReferenceTable) {
      if (std::find(ds.begin(), ds.end(), row.d) != ds.end()) cells.emplace_back(row.d, row.m);
    }
  } else {
    const auto ms = parse_index_list(m_text);
    for (Index d : ds) {
      for (Index m : ms) cells.emplace_back(d, m);
    }
  }

  Json header;
  header["command"] = "table";
  header["q"] = q;
  header["d"] = d_text;
  header["m"] = m_text.empty() ? "reference" : m_text;
  header["strategy"] = search.strategy.empty() ? "exhaustive" : search.strategy;
  header["budget"] = search.budget > 0 ? Json(search.budget) : Json("per-d default");
  header["symmetry_reduction"] = !search.no_symmetry;
  header["seed"] = seed;

  Output out(output);
  write_csv_header(out.stream(), header);
  out.stream() << "d,m,column_type,value\n";
  for (auto [d, m] : cells) {
    const SearchConfig config = search.resolve(table_search_config(d), derive_seed(seed, {static_cast<std::uint64_t>(d),
                                                                                          static_cast<std::uint64_t>(m)}));
    SearchConfig exact = config;
    exact.strategy = SearchStrategy::exhaustive;
    out.stream() << d << ',' << m << ",biased," << format_double(epsilon_biased_bound(q, d, m, exact)) << '\n';
    const auto report = optimize_params(q, d, m, config);
    out.stream() << d << ',' << m << ",optimized," << format_double(report.worst_case_fidelity) << '\n';
    out.stream().flush();
  }
  return kExitOk;
}

// --- optimize --------------------------------------------------------------

int run_optimize(Index q, Index d, Index m, const SearchOptions& search, std::uint64_t seed,
                 const std::string& params_out, const std::string& output) {
  SearchConfig base;
  const SearchConfig config = search.resolve(base, seed);
  const auto report = optimize_params(q, d, m, config);
  Json doc;
  doc["config"] = to_json(config);
  doc["config"]["q"] = q;
  doc["config"]["d"] = d;
  doc["config"]["m"] = m;
  doc["report"] = to_json(report);
  Output out(output);
  emit_json(out.stream(), doc);
  if (!params_out.empty()) {
    std::ofstream file(params_out);
    require(static_cast<bool>(file), "cannot open params output: " + params_out);
    file << to_json(report.params).dump(2) << '\n';
  }
  return kExitOk;
}

// --- bias ------------------------------------------------------------------

int run_bias(Index q, const std::string& set_text, std::optional<Index> x, const std::string& output) {
  const auto set = parse_index_list(set_text);
  Json doc;
  doc["q"] = q;
  doc["set"] = set;
  if (x) {
    doc["x"] = *x;
    doc["bias"] = bias(set, *x, q);
  } else {
    const auto peak = max_bias(set, q);
    doc["x_star"] = peak.x_star;
    doc["max_bias"] = peak.value;
  }
  Output out(output);
  emit_json(out.stream(), doc);
  return kExitOk;
}

// --- hash ------------------------------------------------------------------

int run_hash(const std::string& params_path, Index x, const std::string& output) {
  const auto params = load_params(params_path);
  const auto hash = quantum_hash(params, x);
  Json doc;
  doc["params"] = to_json(params);
  doc["x"] = x;
  Json qudits = Json::array();
  for (const auto& state : hash.qudits) {
    Json entry;
    entry["phase_indices"] = state.exact()->indices;
    Json amps = Json::array();
    for (const auto& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
    entry["amplitudes"] = amps;
    qudits.push_back(entry);
  }
  doc["qudits"] = qudits;
  Output out(output);
  emit_json(out.stream(), doc);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

int run_verify(const std::string& params_path, Index x1, Index x2, const DetectorOptions& detector,
               std::int64_t shots, std::uint64_t seed, const std::string& format, const std::string& output) {
  const auto params = load_params(params_path);
  const auto model = detector.resolve();
  const auto report = simulate_verification(params, x1, x2, model, shots, seed);
  const bool equal = report.verdict_equal();
  Output out(output);
  if (format == "csv") {
    Json header;
    header["command"] = "verify";
    header["params"] = to_json(params);
    header["detector"] = detector_json(model);
    header["verdict"] = equal ? "equal" : "different";
    write_csv_header(out.stream(), header);
    write_verification_csv(out.stream(), params, x1, x2, report);
  } else {
    Json doc;
    doc["config"]["params"] = to_json(params);
    doc["config"]["x1"] = x1;
    doc["config"]["x2"] = x2;
    doc["config"]["shots"] = shots;
    doc["config"]["seed"] = seed;
    doc["config"]["detector"] = detector_json(model);
    doc["report"] = to_json(report);
    doc["verdict"] = equal ? "equal" : "different";
    emit_json(out.stream(), doc);
  }
  return equal ? kExitOk : kExitReject;
}

// --- tradeoff --------------------------------------------------------------

int run_tradeoff(Index q, const std::string& d_text, Index m_max, double collision_limit, double decoding_limit,
                 const SearchOptions& search, std::uint64_t seed, const std::string& output) {
  const auto ds = parse_index_list(d_text);
  Json header;
  header["command"] = "tradeoff";
  header["q"] = q;
  header["d"] = d_text;
  header["m_max"] = m_max;
  header["collision_limit"] = collision_limit;
  header["decoding_limit"] = decoding_limit;
  header["strategy"] = search.strategy.empty() ? "exhaustive" : search.strategy;
  header["budget"] = search.budget > 0 ? Json(search.budget) : Json("per-d default");
  header["seed"] = seed;
  Output out(output);
  write_csv_header(out.stream(), header);
  out.stream() << "d,m,collision,decoding,fewest\n";
  for (Index d : ds) {
    const SearchConfig config = search.resolve(table_search_config(d), seed);
    const std::vector<Index> one{d};
    const auto entries = tradeoff(q, one, m_max, collision_limit, decoding_limit, config);
    for (const auto& point : entries.front().feasible) {
      out.stream() << d << ',' << point.m << ',' << format_double(point.collision) << ','
                   << format_double(point.decoding) << ',' << (point.m == entries.front().fewest_qudits() ? 1 : 0)
                   << '\n';
    }
    out.stream().flush();
  }
  return kExitOk;
}

// --- simulate-curve --------------------------------------------------------

int run_curve(Index q, Index d, const std::string& m_text, const DetectorOptions& detector, std::int64_t shots,
              const SearchOptions& search, std::uint64_t seed, const std::string& output) {
  const auto ms = parse_index_list(m_text);
  const auto model = detector.resolve();
  const SearchConfig config = search.resolve(table_search_config(d), seed);
  Json header;
  header["command"] = "simulate-curve";
  header["q"] = q;
  header["d"] = d;
  header["m"] = m_text;
  header["shots"] = shots;
  header["search"] = to_json(config);
  header["detector"] = detector_json(model);
  Output out(output);
  write_csv_header(out.stream(), header);
  out.stream() << "d,m,x_star,theoretical,empirical,stderr,shots,seed\n";
  for (Index m : ms) {
    const std::vector<Index> one{m};
    const auto row = estimate_collision_curve(q, d, one, model, shots, config).front();
    out.stream() << row.d << ',' << row.m << ',' << row.x_star << ',' << format_double(row.theoretical) << ','
                 << format_double(row.empirical) << ',' << format_double(row.standard_error) << ',' << row.shots
                 << ',' << row.seed << '\n';
    out.stream().flush();
  }
  return kExitOk;
}

// --- fidelity --------------------------------------------------------------

int run_fidelity(const std::string& measured_path, const std::string& target_path, const std::string& params_path,
                 Index x, Index qudit, double trace_tolerance, const std::string& output) {
  const auto measured = parse_density_matrix(read_file(measured_path), trace_tolerance);
  Json doc;
  doc["measured"] = measured_path;
  doc["trace_tolerance"] = trace_tolerance;
  doc["purity_max_eigenvalue"] = purity_max_eigenvalue(measured);
  std::optional<DensityMatrix> target;
  if (!target_path.empty()) {
    target = parse_density_matrix(read_file(target_path), trace_tolerance);
    doc["target"] = target_path;
  } else if (!params_path.empty()) {
    const auto params = load_params(params_path);
    target = DensityMatrix::pure(qudit_hash_state(params, qudit, x));
    doc["target"] = {{"params", to_json(params)}, {"x", x}, {"qudit", qudit}};
  }
  if (target) doc["fidelity"] = density_fidelity(*target, measured);
  Output out(output);
  emit_json(out.stream(), doc);
  return kExitOk;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QHASH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw std::invalid_argument(std::string("QHASH_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiqudit quantum hashing toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with default flag values; command-line flags take precedence");
  app.fallthrough();

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string output;
  app.add_option("--seed", seed, "random seed (default: $QHASH_SEED or 1)")->each([&](const std::string&) {
    seed_given = true;
  });
  app.add_option("--output", output, "write results to this file instead of stdout");

  Index q = kReferenceModulus;
  Index d = 2;
  Index m = 1;
  std::string d_text = "2,3,4";
  std::string m_text;
  SearchOptions search;
  DetectorOptions detector;

  auto* table = app.add_subcommand("table", "worst-case collision table (CSV: d,m,column_type,value)");
  table->add_option("--q", q)->capture_default_str();
  table->add_option("--d", d_text, "comma list or range, e.g. 2,3,4")->capture_default_str();
  table->add_option("--m", m_text, "comma list or range; default: reference rows (q = 256)");
  search.add(table);

  std::string params_out;
  auto* optimize = app.add_subcommand("optimize", "search for parameters minimizing the worst-case collision");
  optimize->add_option("--q", q)->capture_default_str();
  optimize->add_option("--d", d)->required();
  optimize->add_option("--m", m)->required();
  optimize->add_option("--params-out", params_out, "also write the parameter document here");
  search.add(optimize);

  std::string set_text;
  std::optional<Index> x_opt;
  auto* bias_cmd = app.add_subcommand("bias", "bias of a set, or its maximum over nonzero x");
  bias_cmd->add_option("--q", q)->capture_default_str();
  bias_cmd->add_option("--set", set_text, "comma list of elements")->required();
  bias_cmd->add_option("--x", x_opt, "evaluate at this x only");

  std::string params_path;
  Index x = 0;
  auto* hash = app.add_subcommand("hash", "print the quantum hash of x");
  hash->add_option("--params", params_path)->required();
  hash->add_option("--x", x)->required();

  Index x1 = 0;
  Index x2 = 0;
  std::int64_t shots = 10'000;
  std::string format = "json";
  auto* verify = app.add_subcommand("verify", "simulate verification of psi(x1) against x2 (exit 0 equal, 1 different)");
  verify->add_option("--params", params_path)->required();
  verify->add_option("--x1", x1)->required();
  verify->add_option("--x2", x2)->required();
  verify->add_option("--shots", shots)->capture_default_str()->check(CLI::PositiveNumber);
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  detector.add(verify);

  Index m_max = 7;
  double collision_limit = 0.25;
  double decoding_limit = 0.15;
  auto* trade = app.add_subcommand("tradeoff", "feasible qudit counts under collision and decoding limits");
  trade->add_option("--q", q)->capture_default_str();
  trade->add_option("--d", d_text)->capture_default_str();
  trade->add_option("--m-max", m_max)->capture_default_str()->check(CLI::PositiveNumber);
  trade->add_option("--collision-limit", collision_limit)->capture_default_str();
  trade->add_option("--decoding-limit", decoding_limit)->capture_default_str();
  search.add(trade);

  std::string curve_m = "1-5";
  auto* curve = app.add_subcommand("simulate-curve", "theoretical vs simulated worst-case collision per m");
  curve->add_option("--q", q)->capture_default_str();
  curve->add_option("--d", d)->capture_default_str();
  curve->add_option("--m", curve_m)->capture_default_str();
  curve->add_option("--shots", shots)->capture_default_str()->check(CLI::PositiveNumber);
  search.add(curve);
  detector.add(curve);

  std::string measured_path;
  std::string target_path;
  Index qudit = 0;
  double trace_tolerance = DensityMatrix::kTraceTolerance;
  auto* fidelity = app.add_subcommand("fidelity", "purity and fidelity of a measured density matrix");
  fidelity->add_option("--measured", measured_path, "density matrix text file")->required();
  fidelity->add_option("--target", target_path, "target density matrix text file");
  fidelity->add_option("--params", params_path, "pure target: hash state of --x on qudit --qudit");
  fidelity->add_option("--x", x)->capture_default_str();
  fidelity->add_option("--qudit", qudit)->capture_default_str();
  fidelity->add_option("--trace-tolerance", trace_tolerance)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (!seed_given) seed = default_seed();
    if (*table) return run_table(q, d_text, m_text, search, seed, output);
    if (*optimize) return run_optimize(q, d, m, search, seed, params_out, output);
    if (*bias_cmd) return run_bias(q, set_text, x_opt, output);
    if (*hash) return run_hash(params_path, x, output);
    if (*verify) return run_verify(params_path, x1, x2, detector, shots, seed, format, output);
    if (*trade) return run_tradeoff(q, d_text, m_max, collision_limit, decoding_limit, search, seed, output);
    if (*curve) return run_curve(q, d, curve_m, detector, shots, search, seed, output);
    if (*fidelity) return run_fidelity(measured_path, target_path, params_path, x, qudit, trace_tolerance, output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
