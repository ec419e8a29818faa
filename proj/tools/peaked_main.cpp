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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peaked/errors.hpp"
#include "peaked/harness.hpp"

namespace {

namespace fs = std::filesystem;
using peaked::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> noise;
  std::string format = "json";
  std::optional<std::string> out_dir;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_format) {
  cmd->add_option("--seed", flags.seed, "Override the config's seed");
  cmd->add_option("--shots", flags.shots,
                  "Override the config's shot count (0 = exact amplitudes)");
  cmd->add_option("--noise", flags.noise,
                  "Depolarizing noise as p1,p2,trajectories");
  cmd->add_option("--out", flags.out_dir,
                  "Directory for output files (default: print to stdout)");
  if (with_format) {
    cmd->add_option("--format", flags.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "both"}));
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw peaked::IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw peaked::IoError("failed while reading '" + path.string() + "'");
  }
  return buf.str();
}

peaked::NoiseParams parse_noise_flag(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    tokens.push_back(text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (tokens.size() != 3) {
    throw peaked::ConfigError("noise: expected p1,p2,trajectories, got '" +
                              text + "'");
  }
  peaked::NoiseParams params;
  try {
    std::size_t used = 0;
    params.p1 = std::stod(tokens[0], &used);
    if (used != tokens[0].size()) throw std::invalid_argument(tokens[0]);
    params.p2 = std::stod(tokens[1], &used);
    if (used != tokens[1].size()) throw std::invalid_argument(tokens[1]);
    params.trajectories = std::stoi(tokens[2], &used);
    if (used != tokens[2].size()) throw std::invalid_argument(tokens[2]);
  } catch (const std::exception&) {
    throw peaked::ConfigError("noise: expected p1,p2,trajectories, got '" +
                              text + "'");
  }
  params.validate();
  return params;
}

peaked::ExperimentConfig load_config(const std::string& path,
                                     const CommonFlags& flags) {
  const std::string text = read_text_file(path);
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw peaked::ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
  peaked::ExperimentConfig config = peaked::ExperimentConfig::from_json(j);
  const auto claim = [&config](const char* name) {
    std::erase(config.defaulted, name);
  };
  if (flags.seed) {
    config.seed = *flags.seed;
    claim("seed");
  }
  if (flags.shots) {
    config.shots = *flags.shots;
    claim("shots");
  }
  if (flags.noise) {
    config.noise = parse_noise_flag(*flags.noise);
    config.validate();
  }
  return config;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw peaked::IoError("cannot create directory '" + dir +
                          "': " + ec.message());
  }
  return fs::path(dir);
}

/// Writes `stem`.json / `stem`.csv under --out, or prints to stdout.
/// `result` is anything with to_json() and to_csv().
template <typename Result>
void deliver(const Result& result, const CommonFlags& flags,
             const std::string& stem) {
  std::vector<std::string> formats;
  if (flags.format == "both") {
    formats = {"json", "csv"};
  } else {
    formats = {flags.format};
  }
  for (const std::string& format : formats) {
    const std::string text = format == "json"
                                 ? result.to_json().dump(2) + "\n"
                                 : result.to_csv();
    if (flags.out_dir) {
      const fs::path path =
          prepare_out_dir(*flags.out_dir) / (stem + "." + format);
      peaked::write_text_file(path, text);
      std::cerr << "wrote " << path.string() << "\n";
    } else {
      std::cout << text;
    }
  }
}

/// EstimateReport lacks to_csv(); adapt it to the deliver() shape.
struct ReportOutput {
  peaked::EstimateReport report;

  ordered_json to_json() const { return report.to_json(); }
  std::string to_csv() const {
    std::string text = peaked::EstimateReport::csv_header();
    text += '\n';
    text += report.csv_row();
    text += '\n';
    return text;
  }
};

struct HistogramOutput {
  peaked::ShotHistogram hist;

  ordered_json to_json() const { return peaked::histogram_to_json(hist); }
  std::string to_csv() const { return peaked::histogram_to_csv(hist); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Peaked-circuit estimators for infinite-temperature correlation "
      "functions"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> compare_paths;
  CommonFlags flags;
  int t_min = 1;
  int t_max = 10;

  CLI::App* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("--config", config_path, "Experiment config JSON file")
      ->required();
  add_common_flags(run, flags, true);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a grover config across T values");
  sweep->add_option("--config", config_path, "Experiment config JSON file")
      ->required();
  sweep->add_option("--t-min", t_min, "First T (default 1)");
  sweep->add_option("--t-max", t_max, "Last T (default 10)");
  add_common_flags(sweep, flags, true);

  CLI::App* compare = app.add_subcommand(
      "compare", "Run several configs sharing n/observable/projector");
  compare
      ->add_option("--config", compare_paths,
                   "Experiment config JSON file (repeat for each method)")
      ->required();
  add_common_flags(compare, flags, true);

  CLI::App* export_qasm = app.add_subcommand(
      "export-qasm", "Lower the config's circuit and print OpenQASM 2.0");
  export_qasm
      ->add_option("--config", config_path, "Experiment config JSON file")
      ->required();
  export_qasm->add_option("--out", flags.out_dir,
                          "Directory for circuit.qasm (default: stdout)");

  CLI::App* sample =
      app.add_subcommand("sample", "Dump a measurement histogram");
  sample->add_option("--config", config_path, "Experiment config JSON file")
      ->required();
  add_common_flags(sample, flags, true);

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      const peaked::ExperimentConfig config = load_config(config_path, flags);
      deliver(ReportOutput{peaked::run_experiment(config)}, flags, "report");
    } else if (sweep->parsed()) {
      const peaked::ExperimentConfig config = load_config(config_path, flags);
      deliver(peaked::sweep_grover_T(config, t_min, t_max), flags, "sweep");
    } else if (compare->parsed()) {
      std::vector<peaked::ExperimentConfig> configs;
      configs.reserve(compare_paths.size());
      for (const std::string& path : compare_paths) {
        configs.push_back(load_config(path, flags));
      }
      deliver(peaked::compare_methods(configs), flags, "compare");
    } else if (export_qasm->parsed()) {
      const peaked::ExperimentConfig config = load_config(config_path, flags);
      const peaked::Circuit lowered =
          peaked::lower_circuit(peaked::build_experiment_circuit(config));
      const std::string text = peaked::export_qasm(lowered);
      if (flags.out_dir) {
        const fs::path path = prepare_out_dir(*flags.out_dir) / "circuit.qasm";
        peaked::write_text_file(path, text);
        std::cerr << "wrote " << path.string() << "\n";
      } else {
        std::cout << text;
      }
    } else if (sample->parsed()) {
      const peaked::ExperimentConfig config = load_config(config_path, flags);
      deliver(HistogramOutput{peaked::sample_experiment(config)}, flags,
              "histogram");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  } catch (const peaked::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const peaked::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
