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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "peaked/circuits.hpp"
#include "peaked/estimators.hpp"
#include "peaked/noise.hpp"

namespace peaked {

/// Oracle selector from the config grammar:
/// `sign_positive` | `sign_positive_and_up` | `set:[z0,z1,...]`.
struct OracleChoice {
  enum class Kind { kSignPositive, kSignPositiveAndUp, kExplicitSet };

  Kind kind = Kind::kSignPositiveAndUp;
  std::vector<std::uint64_t> set;

  static OracleChoice parse(const std::string& text);
  std::string spec_string() const;
  OraclePredicate build(const DiagonalObservable& obs, UpProjector proj,
                        int n_qubits) const;

  friend bool operator==(const OracleChoice&, const OracleChoice&) = default;
};

/// One experiment's full description. Fields left out of the JSON form
/// take the defaults below and are listed in `defaulted`, which travels
/// with the config so echoed reports disclose every assumption.
///
/// shots = 0 means estimates come from exact amplitudes.
struct ExperimentConfig {
  std::string method;  // required: haar | grover | shallow
  int n_qubits = 12;
  std::string observable = "Z@[0]";
  std::string projector = "P_up@1";
  OracleChoice oracle;            // grover only
  int grover_t = 3;               // grover only
  std::optional<ShallowSpec> shallow;  // shallow only; absent = derived default
  int haar_samples = 1;           // haar only
  std::uint64_t shots = 8192;
  std::optional<NoiseParams> noise;
  std::uint64_t seed = 1;
  std::vector<std::string> defaulted;

  /// Throws ConfigError whose message lists every offending field path.
  static ExperimentConfig from_json(const ordered_json& j);
  ordered_json to_json() const;
  void validate() const;

  DiagonalObservable observable_obj() const;
  UpProjector projector_obj() const;

  /// The spec to build when method = shallow: the configured one, or the
  /// derived default (Ry(pi/4) on each observable support qubit, CNOTs
  /// chaining consecutive support qubits).
  ShallowSpec shallow_or_default() const;
};

/// Ordered (axis value, report) pairs from a parameter sweep.
struct SweepResult {
  std::string axis = "T";
  std::vector<std::pair<int, EstimateReport>> points;

  ordered_json to_json() const;
  std::string to_csv() const;
};

/// Side-by-side method rows over a shared (n, observable, projector).
struct CompareResult {
  std::vector<EstimateReport> rows;

  ordered_json to_json() const;
  std::string to_csv() const;
};

/// Builds the state for the config's method, applies optional noise, and
/// returns the report: top-level values are shot-based when shots > 0 and
/// trajectory-averaged when noise is on; whenever they are not the
/// noiseless exact-amplitude values, those are attached as `exact`.
/// The full normalized config is echoed in the report.
EstimateReport run_experiment(const ExperimentConfig& config);

/// Runs the config once per T in [t_min, t_max] with per-T derived seeds.
SweepResult sweep_grover_T(const ExperimentConfig& config, int t_min = 1,
                           int t_max = 10);

/// Runs >= 2 configs that agree on (n_qubits, observable, projector).
CompareResult compare_methods(const std::vector<ExperimentConfig>& configs);

/// The circuit a grover/shallow config describes (haar has none).
Circuit build_experiment_circuit(const ExperimentConfig& config);

/// Shot histogram for the config's prepared state (pooled over noise
/// trajectories when noise is on). Requires shots >= 1.
ShotHistogram sample_experiment(const ExperimentConfig& config);

ordered_json histogram_to_json(const ShotHistogram& hist);
std::string histogram_to_csv(const ShotHistogram& hist);

/// Writes `text` to `path`, throwing IoError with the path on failure.
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

/// Serializes to `format` ("json" or "csv") and writes one file.
void emit_outputs(const EstimateReport& report, const std::string& format,
                  const std::filesystem::path& path);
void emit_outputs(const SweepResult& sweep, const std::string& format,
                  const std::filesystem::path& path);
void emit_outputs(const CompareResult& compare, const std::string& format,
                  const std::filesystem::path& path);

}  // namespace peaked
