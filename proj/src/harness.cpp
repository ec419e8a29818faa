// Copyright 2026 The peaked-itcf developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "peaked/harness.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <set>
#include <utility>

#include "peaked/detail/format.hpp"
#include "peaked/errors.hpp"
#include "peaked/rng.hpp"

namespace peaked {

namespace {

using detail::fmt_double;

std::string join_problems(const std::vector<std::string>& problems) {
  std::string msg = "invalid config:";
  for (const std::string& p : problems) msg += "\n  " + p;
  return msg;
}

std::vector<std::uint64_t> parse_uint_list(const std::string& text,
                                           const std::string& what) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ArgumentError(what + " must be a bracketed list, got '" + text +
                        "'");
  }
  std::vector<std::uint64_t> out;
  const std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = body.find(',', pos);
    const std::string token = body.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty() || token.size() > 8 ||
        token.find_first_not_of("0123456789") != std::string::npos) {
      throw ArgumentError(what + " entry '" + token +
                          "' is not a basis-state index");
    }
    out.push_back(std::stoull(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Value-level checks shared by validate() and from_json(). Assumes the
/// fields are structurally present; appends one line per offending field.
void collect_problems(const ExperimentConfig& cfg,
                      std::vector<std::string>& problems) {
  const bool known_method = cfg.method == "haar" || cfg.method == "grover" ||
                            cfg.method == "shallow";
  if (!known_method) {
    problems.push_back("method: must be one of haar|grover|shallow, got '" +
                       cfg.method + "'");
  }
  const bool n_ok = cfg.n_qubits >= 1 && cfg.n_qubits <= kMaxQubits;
  if (!n_ok) {
    problems.push_back("n_qubits: must be in [1, " +
                       std::to_string(kMaxQubits) + "], got " +
                       std::to_string(cfg.n_qubits));
  }

  bool pairing_ok = false;
  DiagonalObservable obs = DiagonalObservable::zstring(1, {});
  UpProjector proj{0};
  if (n_ok) {
    bool obs_ok = false;
    try {
      obs = parse_observable(cfg.observable, cfg.n_qubits);
      obs_ok = true;
    } catch (const Error& e) {
      problems.push_back(std::string("observable: ") + e.what());
    }
    try {
      proj = parse_projector(cfg.projector, cfg.n_qubits);
      pairing_ok = obs_ok;
    } catch (const Error& e) {
      problems.push_back(std::string("projector: ") + e.what());
    }
    if (pairing_ok && ((obs.support_mask() >> proj.qubit) & 1u)) {
      problems.push_back("projector: qubit " + std::to_string(proj.qubit) +
                         " overlaps the observable support");
      pairing_ok = false;
    }
  }

  if (cfg.grover_t < 0 || cfg.grover_t > kMaxGroverIterations) {
    problems.push_back("T: must be in [0, " +
                       std::to_string(kMaxGroverIterations) + "], got " +
                       std::to_string(cfg.grover_t));
  }
  if (cfg.haar_samples < 1) {
    problems.push_back("haar_samples: must be >= 1, got " +
                       std::to_string(cfg.haar_samples));
  }

  if (cfg.method == "grover" && pairing_ok) {
    try {
      cfg.oracle.build(obs, proj, cfg.n_qubits);
    } catch (const Error& e) {
      problems.push_back(std::string("oracle: ") + e.what());
    }
    if (cfg.oracle.kind == OracleChoice::Kind::kExplicitSet) {
      const std::uint64_t space = std::uint64_t{1} << cfg.n_qubits;
      if (cfg.oracle.set.empty()) {
        problems.push_back("oracle: explicit set marks no basis states");
      } else if (cfg.oracle.set.size() >= space) {
        problems.push_back("oracle: explicit set marks every basis state");
      }
      for (std::uint64_t z : cfg.oracle.set) {
        if (z >= space) {
          problems.push_back("oracle: marked index " + std::to_string(z) +
                             " out of range for " +
                             std::to_string(cfg.n_qubits) + " qubits");
          break;
        }
      }
    }
  }

  if (cfg.method == "shallow" && pairing_ok) {
    try {
      build_shallow(cfg.n_qubits, cfg.shallow_or_default());
    } catch (const Error& e) {
      problems.push_back(std::string("shallow: ") + e.what());
    }
  }

  if (cfg.noise) {
    if (cfg.method == "haar") {
      problems.push_back("noise: not applicable to method=haar");
    }
    try {
      cfg.noise->validate();
    } catch (const Error& e) {
      problems.push_back(std::string("noise: ") + e.what());
    }
  }
}

void set_metrics(EstimateReport& report, const EstimatorValues& values) {
  report.c_ab_projected = values.c_projected;
  report.c_ab_full = values.c_full;
  report.s_a = values.s_a;
  report.e_a.reset();
  if (values.denominator > 0.0) {
    report.e_a = values.c_projected / values.denominator;
  }
}

ExactReference reference_from(const EstimatorValues& values) {
  ExactReference ref;
  ref.c_ab_projected = values.c_projected;
  ref.c_ab_full = values.c_full;
  ref.s_a = values.s_a;
  if (values.denominator > 0.0) {
    ref.e_a = values.c_projected / values.denominator;
  }
  return ref;
}

ordered_json normalized_echo(const ExperimentConfig& config) {
  ExperimentConfig echo = config;
  if (echo.method == "shallow" && !echo.shallow) {
    echo.shallow = config.shallow_or_default();
  }
  return echo.to_json();
}

}  // namespace

OracleChoice OracleChoice::parse(const std::string& text) {
  OracleChoice out;
  if (text == "sign_positive") {
    out.kind = Kind::kSignPositive;
  } else if (text == "sign_positive_and_up") {
    out.kind = Kind::kSignPositiveAndUp;
  } else if (text.rfind("set:", 0) == 0) {
    out.kind = Kind::kExplicitSet;
    out.set = parse_uint_list(text.substr(4), "oracle set");
    std::sort(out.set.begin(), out.set.end());
    out.set.erase(std::unique(out.set.begin(), out.set.end()), out.set.end());
  } else {
    throw ArgumentError(
        "oracle must be sign_positive, sign_positive_and_up, or "
        "set:[z0,z1,...], got '" +
        text + "'");
  }
  return out;
}

std::string OracleChoice::spec_string() const {
  switch (kind) {
    case Kind::kSignPositive:
      return "sign_positive";
    case Kind::kSignPositiveAndUp:
      return "sign_positive_and_up";
    case Kind::kExplicitSet: {
      std::string text = "set:[";
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (i > 0) text += ',';
        text += std::to_string(set[i]);
      }
      return text + "]";
    }
  }
  throw ContractError("unhandled oracle kind");
}

OraclePredicate OracleChoice::build(const DiagonalObservable& obs,
                                    UpProjector proj, int n_qubits) const {
  switch (kind) {
    case Kind::kSignPositive:
      return heaviside_oracle(obs);
    case Kind::kSignPositiveAndUp:
      return conjoined_oracle(obs, proj);
    case Kind::kExplicitSet:
      return OraclePredicate::explicit_set(n_qubits, set);
  }
  throw ContractError("unhandled oracle kind");
}

ExperimentConfig ExperimentConfig::from_json(const ordered_json& j) {
  std::vector<std::string> problems;
  if (!j.is_object()) {
    throw ConfigError("invalid config: top level must be a JSON object");
  }

  static const std::set<std::string> kKnown = {
      "method", "n_qubits", "observable",   "projector", "oracle", "T",
      "shallow", "haar_samples", "shots", "noise", "seed", "defaulted"};
  for (const auto& item : j.items()) {
    if (!kKnown.count(item.key())) {
      problems.push_back(item.key() + ": unknown field");
    }
  }

  ExperimentConfig cfg;
  const auto read = [&](const char* key, auto& out) {
    if (!j.contains(key)) return false;
    try {
      out = j.at(key).template get<std::decay_t<decltype(out)>>();
    } catch (const ordered_json::exception&) {
      problems.push_back(std::string(key) + ": wrong JSON type");
    }
    return true;
  };

  if (!read("method", cfg.method)) {
    problems.push_back("method: required");
  }
  const bool has_n = read("n_qubits", cfg.n_qubits);
  const bool has_observable = read("observable", cfg.observable);
  const bool has_projector = read("projector", cfg.projector);
  const bool has_t = read("T", cfg.grover_t);
  const bool has_haar_samples = read("haar_samples", cfg.haar_samples);
  const bool has_shots = read("shots", cfg.shots);
  const bool has_seed = read("seed", cfg.seed);

  bool has_oracle = false;
  if (j.contains("oracle")) {
    has_oracle = true;
    std::string text;
    if (read("oracle", text)) {
      try {
        cfg.oracle = OracleChoice::parse(text);
      } catch (const Error& e) {
        problems.push_back(std::string("oracle: ") + e.what());
      }
    }
  }
  bool has_shallow = false;
  if (j.contains("shallow")) {
    has_shallow = true;
    try {
      cfg.shallow = ShallowSpec::from_json(j.at("shallow"));
    } catch (const Error& e) {
      problems.push_back(std::string("shallow: ") + e.what());
    } catch (const ordered_json::exception&) {
      problems.push_back("shallow: wrong JSON type");
    }
  }
  if (j.contains("noise")) {
    try {
      cfg.noise = NoiseParams::from_json(j.at("noise"));
    } catch (const Error& e) {
      problems.push_back(std::string("noise: ") + e.what());
    } catch (const ordered_json::exception&) {
      problems.push_back("noise: wrong JSON type");
    }
  }

  if (cfg.method == "haar" || cfg.method == "shallow") {
    if (has_oracle) {
      problems.push_back("oracle: only valid when method=grover");
    }
    if (has_t) problems.push_back("T: only valid when method=grover");
  }
  if (cfg.method != "shallow" && has_shallow) {
    problems.push_back("shallow: only valid when method=shallow");
  }
  if (cfg.method != "haar" && has_haar_samples) {
    problems.push_back("haar_samples: only valid when method=haar");
  }

  if (j.contains("defaulted")) {
    try {
      cfg.defaulted = j.at("defaulted").get<std::vector<std::string>>();
    } catch (const ordered_json::exception&) {
      problems.push_back("defaulted: wrong JSON type");
    }
  } else {
    const std::vector<std::pair<const char*, bool>> fields = {
        {"n_qubits", has_n},
        {"observable", has_observable},
        {"projector", has_projector},
        {"oracle", has_oracle || cfg.method != "grover"},
        {"T", has_t || cfg.method != "grover"},
        {"shallow", has_shallow || cfg.method != "shallow"},
        {"haar_samples", has_haar_samples || cfg.method != "haar"},
        {"shots", has_shots},
        {"seed", has_seed}};
    for (const auto& [name, present] : fields) {
      if (!present) cfg.defaulted.emplace_back(name);
    }
  }

  if (problems.empty()) collect_problems(cfg, problems);
  if (!problems.empty()) throw ConfigError(join_problems(problems));
  return cfg;
}

ordered_json ExperimentConfig::to_json() const {
  ordered_json j;
  j["method"] = method;
  j["n_qubits"] = n_qubits;
  j["observable"] = observable;
  j["projector"] = projector;
  if (method == "grover") {
    j["oracle"] = oracle.spec_string();
    j["T"] = grover_t;
  }
  if (method == "shallow" && shallow) j["shallow"] = shallow->to_json();
  if (method == "haar") j["haar_samples"] = haar_samples;
  j["shots"] = shots;
  if (noise) j["noise"] = noise->to_json();
  j["seed"] = seed;
  j["defaulted"] = defaulted;
  return j;
}

void ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  collect_problems(*this, problems);
  if (!problems.empty()) throw ConfigError(join_problems(problems));
}

DiagonalObservable ExperimentConfig::observable_obj() const {
  return parse_observable(observable, n_qubits);
}

UpProjector ExperimentConfig::projector_obj() const {
  return parse_projector(projector, n_qubits);
}

ShallowSpec ExperimentConfig::shallow_or_default() const {
  if (shallow) return *shallow;
  ShallowSpec spec;
  const DiagonalObservable obs = observable_obj();
  const std::vector<int>& support = obs.support();
  for (int q : support) {
    spec.rotations.push_back({q, 'y', std::numbers::pi / 4});
  }
  for (std::size_t i = 1; i < support.size(); ++i) {
    spec.pairs.push_back({support[i - 1], support[i], false});
  }
  return spec;
}

ordered_json SweepResult::to_json() const {
  ordered_json j;
  j["axis"] = axis;
  ordered_json pts = ordered_json::array();
  for (const auto& [t, report] : points) {
    ordered_json p;
    p[axis] = t;
    p["report"] = report.to_json();
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  return j;
}

std::string SweepResult::to_csv() const {
  std::string text = EstimateReport::csv_header();
  text += '\n';
  for (const auto& [t, report] : points) {
    text += report.csv_row();
    text += '\n';
  }
  return text;
}

ordered_json CompareResult::to_json() const {
  ordered_json j;
  ordered_json table = ordered_json::array();
  ordered_json reports = ordered_json::array();
  for (const EstimateReport& r : rows) {
    ordered_json row;
    row["method"] = r.method;
    row["s_a"] = r.s_a;
    row["c_ab_projected"] = r.c_ab_projected;
    if (r.e_a) {
      row["e_a"] = *r.e_a;
    } else {
      row["e_a"] = nullptr;
    }
    table.push_back(std::move(row));
    reports.push_back(r.to_json());
  }
  j["rows"] = std::move(table);
  j["reports"] = std::move(reports);
  return j;
}

std::string CompareResult::to_csv() const {
  std::string text = "method,s_a,c_ab_projected,e_a\n";
  for (const EstimateReport& r : rows) {
    text += r.method;
    text += ',' + fmt_double(r.s_a);
    text += ',' + fmt_double(r.c_ab_projected);
    text += ',';
    if (r.e_a) text += fmt_double(*r.e_a);
    text += '\n';
  }
  return text;
}

EstimateReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const DiagonalObservable obs = config.observable_obj();
  const UpProjector proj = config.projector_obj();

  EstimateReport report;
  report.method = config.method;
  report.n_qubits = config.n_qubits;
  report.shots_used = config.shots;
  report.seed = config.seed;

  if (config.method == "haar") {
    const HaarAverage average = haar_average_itcf(
        config.n_qubits, obs, proj, config.haar_samples, config.seed);
    if (config.shots == 0) {
      report.c_ab_projected = average.report.c_ab_projected;
      report.c_ab_full = average.report.c_ab_full;
      report.s_a = average.report.s_a;
      report.e_a = average.report.e_a;
    } else {
      std::vector<EstimatorValues> sampled;
      sampled.reserve(config.haar_samples);
      for (int i = 0; i < config.haar_samples; ++i) {
        const StateVector state = haar_random_state(
            config.n_qubits,
            derive_seed(config.seed, kSeedDomainHaarSample, i));
        const ShotHistogram hist = measure_sample(
            state, config.shots, derive_seed(config.seed, kSeedDomainShots, i));
        sampled.push_back(values_from_histogram(hist, obs, proj));
      }
      set_metrics(report, mean_values(sampled));
      ExactReference ref;
      ref.c_ab_projected = average.report.c_ab_projected;
      ref.c_ab_full = average.report.c_ab_full;
      ref.s_a = average.report.s_a;
      ref.e_a = average.report.e_a;
      report.exact = ref;
    }
    report.config_echo = normalized_echo(config);
    return report;
  }

  const Circuit circuit = build_experiment_circuit(config);
  if (config.method == "grover") report.grover_t = config.grover_t;
  const StateVector prepared =
      apply_circuit(zero_state(config.n_qubits), circuit);
  const EstimatorValues ideal = exact_values(prepared, obs, proj);

  if (!config.noise) {
    if (config.shots == 0) {
      set_metrics(report, ideal);
    } else {
      const ShotHistogram hist =
          measure_sample(prepared, config.shots,
                         derive_seed(config.seed, kSeedDomainShots, 0));
      set_metrics(report, values_from_histogram(hist, obs, proj));
      report.exact = reference_from(ideal);
    }
  } else {
    if (config.shots == 0) {
      const NoisyResult noisy =
          apply_noisy_circuit(zero_state(config.n_qubits), circuit,
                              *config.noise, obs, proj, config.seed);
      set_metrics(report, noisy.pooled);
    } else {
      const ShotHistogram hist =
          noisy_measure_sample(zero_state(config.n_qubits), circuit,
                               *config.noise, config.shots, config.seed);
      set_metrics(report, values_from_histogram(hist, obs, proj));
    }
    report.exact = reference_from(ideal);
  }

  report.config_echo = normalized_echo(config);
  return report;
}

SweepResult sweep_grover_T(const ExperimentConfig& config, int t_min,
                           int t_max) {
  if (config.method != "grover") {
    throw ArgumentError("sweep requires method=grover, got '" +
                        config.method + "'");
  }
  if (t_min < 0 || t_max > kMaxGroverIterations || t_min > t_max) {
    throw ArgumentError("sweep range must satisfy 0 <= t_min <= t_max <= " +
                        std::to_string(kMaxGroverIterations));
  }
  config.validate();

  SweepResult out;
  out.points.reserve(t_max - t_min + 1);
  for (int t = t_min; t <= t_max; ++t) {
    ExperimentConfig point = config;
    point.grover_t = t;
    point.seed = derive_seed(config.seed, kSeedDomainSweepPoint, t);
    std::erase_if(point.defaulted, [](const std::string& name) {
      return name == "T" || name == "seed";
    });
    out.points.emplace_back(t, run_experiment(point));
  }
  return out;
}

CompareResult compare_methods(const std::vector<ExperimentConfig>& configs) {
  if (configs.size() < 2) {
    throw ArgumentError("compare needs at least two configs, got " +
                        std::to_string(configs.size()));
  }
  const ExperimentConfig& first = configs.front();
  for (std::size_t i = 1; i < configs.size(); ++i) {
    const ExperimentConfig& c = configs[i];
    if (c.n_qubits != first.n_qubits || c.observable != first.observable ||
        c.projector != first.projector) {
      throw ArgumentError(
          "compare configs must share n_qubits, observable, and projector; "
          "config " +
          std::to_string(i) + " differs from config 0");
    }
  }
  CompareResult out;
  out.rows.reserve(configs.size());
  for (const ExperimentConfig& c : configs) {
    out.rows.push_back(run_experiment(c));
  }
  return out;
}

Circuit build_experiment_circuit(const ExperimentConfig& config) {
  config.validate();
  if (config.method == "haar") {
    throw ConfigError("method: haar prepares a random state, not a circuit");
  }
  if (config.method == "grover") {
    const OraclePredicate predicate = config.oracle.build(
        config.observable_obj(), config.projector_obj(), config.n_qubits);
    return build_grover(config.n_qubits, predicate, config.grover_t);
  }
  return build_shallow(config.n_qubits, config.shallow_or_default());
}

ShotHistogram sample_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.shots == 0) {
    throw ConfigError("shots: sampling requires shots >= 1");
  }
  if (config.method == "haar") {
    const StateVector state = haar_random_state(
        config.n_qubits, derive_seed(config.seed, kSeedDomainHaarSample, 0));
    return measure_sample(state, config.shots,
                          derive_seed(config.seed, kSeedDomainShots, 0));
  }
  const Circuit circuit = build_experiment_circuit(config);
  if (config.noise) {
    return noisy_measure_sample(zero_state(config.n_qubits), circuit,
                                *config.noise, config.shots, config.seed);
  }
  const StateVector prepared =
      apply_circuit(zero_state(config.n_qubits), circuit);
  return measure_sample(prepared, config.shots,
                        derive_seed(config.seed, kSeedDomainShots, 0));
}

ordered_json histogram_to_json(const ShotHistogram& hist) {
  ordered_json j;
  j["n_qubits"] = hist.n_qubits;
  j["total_shots"] = hist.total_shots;
  ordered_json counts;
  for (const auto& [z, count] : hist.counts) {
    counts[hist.bitstring(z)] = count;
  }
  j["counts"] = std::move(counts);
  return j;
}

std::string histogram_to_csv(const ShotHistogram& hist) {
  std::string text = "bitstring,count\n";
  for (const auto& [z, count] : hist.counts) {
    text += hist.bitstring(z);
    text += ',' + std::to_string(count);
    text += '\n';
  }
  return text;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed while writing '" + path.string() + "'");
}

namespace {

void check_format(const std::string& format) {
  if (format != "json" && format != "csv") {
    throw ArgumentError("format must be json or csv, got '" + format + "'");
  }
}

}  // namespace

void emit_outputs(const EstimateReport& report, const std::string& format,
                  const std::filesystem::path& path) {
  check_format(format);
  if (format == "json") {
    write_text_file(path, report.to_json().dump(2) + "\n");
  } else {
    std::string text = EstimateReport::csv_header();
    text += '\n';
    text += report.csv_row();
    text += '\n';
    write_text_file(path, text);
  }
}

void emit_outputs(const SweepResult& sweep, const std::string& format,
                  const std::filesystem::path& path) {
  check_format(format);
  if (format == "json") {
    write_text_file(path, sweep.to_json().dump(2) + "\n");
  } else {
    write_text_file(path, sweep.to_csv());
  }
}

void emit_outputs(const CompareResult& compare, const std::string& format,
                  const std::filesystem::path& path) {
  check_format(format);
  if (format == "json") {
    write_text_file(path, compare.to_json().dump(2) + "\n");
  } else {
    write_text_file(path, compare.to_csv());
  }
}

}  // namespace peaked
