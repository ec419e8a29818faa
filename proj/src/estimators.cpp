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

#include "peaked/estimators.hpp"

#include <bit>
#include <cmath>

#include "peaked/detail/format.hpp"
#include "peaked/rng.hpp"

namespace peaked {

namespace {

using detail::fmt_double;

void check_projector(int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw ArgumentError("projector qubit " + std::to_string(qubit) +
                        " out of range for " + std::to_string(n_qubits) +
                        " qubits");
  }
}

void check_pairing(const DiagonalObservable& obs, UpProjector proj,
                   int n_qubits) {
  if (obs.n_qubits() != n_qubits) {
    throw ArgumentError("observable is for " +
                        std::to_string(obs.n_qubits()) + " qubits, expected " +
                        std::to_string(n_qubits));
  }
  check_projector(proj.qubit, n_qubits);
  if (obs.is_zstring() &&
      (obs.support_mask() & (std::uint64_t{1} << proj.qubit))) {
    throw ArgumentError("projector qubit " + std::to_string(proj.qubit) +
                        " overlaps the observable support");
  }
}

void check_estimator_state(const StateVector& state) {
  if (state.is_projected()) {
    throw ContractError(
        "estimator weights come from the unprojected distribution; pass the "
        "pre-projection state");
  }
  const double n2 = state.norm_sq();
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw ContractError("state is not normalized: |psi|^2 = " +
                        std::to_string(n2));
  }
}

}  // namespace

ordered_json EstimateReport::to_json() const {
  ordered_json j;
  j["method"] = method;
  j["n"] = n_qubits;
  if (grover_t) {
    j["T"] = *grover_t;
  } else {
    j["T"] = nullptr;
  }
  if (shots_used == 0) {
    j["shots"] = "exact";
  } else {
    j["shots"] = shots_used;
  }
  j["seed"] = seed;
  j["c_ab_projected"] = c_ab_projected;
  j["c_ab_full"] = c_ab_full;
  j["s_a"] = s_a;
  if (e_a) {
    j["e_a"] = *e_a;
  } else {
    j["e_a"] = nullptr;
  }
  if (exact) {
    ordered_json e;
    e["c_ab_projected"] = exact->c_ab_projected;
    e["c_ab_full"] = exact->c_ab_full;
    e["s_a"] = exact->s_a;
    if (exact->e_a) {
      e["e_a"] = *exact->e_a;
    } else {
      e["e_a"] = nullptr;
    }
    j["exact"] = e;
  }
  if (!config_echo.is_null()) j["config_echo"] = config_echo;
  return j;
}

EstimateReport EstimateReport::from_json(const ordered_json& j) {
  EstimateReport r;
  r.method = j.at("method").get<std::string>();
  r.n_qubits = j.at("n").get<int>();
  if (!j.at("T").is_null()) r.grover_t = j.at("T").get<int>();
  const auto& shots = j.at("shots");
  if (shots.is_string()) {
    if (shots.get<std::string>() != "exact") {
      throw ArgumentError("shots must be an integer or \"exact\"");
    }
    r.shots_used = 0;
  } else {
    r.shots_used = shots.get<std::uint64_t>();
  }
  r.seed = j.at("seed").get<std::uint64_t>();
  r.c_ab_projected = j.at("c_ab_projected").get<double>();
  r.c_ab_full = j.at("c_ab_full").get<double>();
  r.s_a = j.at("s_a").get<double>();
  if (!j.at("e_a").is_null()) r.e_a = j.at("e_a").get<double>();
  if (j.contains("exact")) {
    const auto& e = j.at("exact");
    ExactReference ref;
    ref.c_ab_projected = e.at("c_ab_projected").get<double>();
    ref.c_ab_full = e.at("c_ab_full").get<double>();
    ref.s_a = e.at("s_a").get<double>();
    if (!e.at("e_a").is_null()) ref.e_a = e.at("e_a").get<double>();
    r.exact = ref;
  }
  if (j.contains("config_echo")) r.config_echo = j.at("config_echo");
  return r;
}

const char* EstimateReport::csv_header() {
  return "method,n,T,shots,seed,c_ab_projected,c_ab_full,s_a,e_a";
}

std::string EstimateReport::csv_row() const {
  std::string row = method;
  row += ',' + std::to_string(n_qubits);
  row += ',';
  if (grover_t) row += std::to_string(*grover_t);
  row += ',';
  row += shots_used == 0 ? "exact" : std::to_string(shots_used);
  row += ',' + std::to_string(seed);
  row += ',' + fmt_double(c_ab_projected);
  row += ',' + fmt_double(c_ab_full);
  row += ',' + fmt_double(s_a);
  row += ',';
  if (e_a) row += fmt_double(*e_a);
  return row;
}

std::vector<double> projected_weights(const StateVector& state,
                                      UpProjector proj) {
  check_projector(proj.qubit, state.n_qubits());
  check_estimator_state(state);
  const std::vector<amp_t>& a = state.amplitudes();
  std::vector<double> w(a.size(), 0.0);
  const std::uint64_t bit = std::uint64_t{1} << proj.qubit;
  for (std::uint64_t z = 0; z < a.size(); ++z) {
    if (!(z & bit)) w[z] = std::norm(a[z]);
  }
  return w;
}

EstimatorValues exact_values(const StateVector& state,
                             const DiagonalObservable& obs, UpProjector proj) {
  check_pairing(obs, proj, state.n_qubits());
  check_estimator_state(state);
  const std::vector<amp_t>& amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << proj.qubit;
  const bool zs = obs.is_zstring();
  const std::uint64_t mask = obs.support_mask();
  const int n = state.n_qubits();

  EstimatorValues v;
  for (std::uint64_t z = 0; z < amps.size(); ++z) {
    const double w = std::norm(amps[z]);
    const double a =
        zs ? ((std::popcount(z & mask) & 1) ? -1.0 : 1.0) : obs.value(z);
    v.expectation += w * a;
    if (!(z & bit)) {
      v.c_projected += w * a;
      v.denominator += w * std::abs(a);
      if (a != 0.0) v.s_a += w;
    }
  }
  v.c_full = v.c_projected / static_cast<double>(std::uint64_t{1} << (n - 1)) -
             v.expectation / static_cast<double>(std::uint64_t{1} << n);
  return v;
}

EstimatorValues values_from_histogram(const ShotHistogram& hist,
                                      const DiagonalObservable& obs,
                                      UpProjector proj) {
  if (hist.total_shots < 1) {
    throw ArgumentError("histogram has no shots");
  }
  check_pairing(obs, proj, hist.n_qubits);
  const std::uint64_t bit = std::uint64_t{1} << proj.qubit;
  const double total = static_cast<double>(hist.total_shots);
  const int n = hist.n_qubits;

  EstimatorValues v;
  for (const auto& [z, count] : hist.counts) {
    const double w = static_cast<double>(count) / total;
    const double a = obs.value(z);
    v.expectation += w * a;
    if (!(z & bit)) {
      v.c_projected += w * a;
      v.denominator += w * std::abs(a);
      if (a != 0.0) v.s_a += w;
    }
  }
  v.c_full = v.c_projected / static_cast<double>(std::uint64_t{1} << (n - 1)) -
             v.expectation / static_cast<double>(std::uint64_t{1} << n);
  return v;
}

EstimatorValues mean_values(const std::vector<EstimatorValues>& samples) {
  if (samples.empty()) {
    throw ArgumentError("mean_values: no samples");
  }
  EstimatorValues m;
  for (const EstimatorValues& v : samples) {
    m.c_projected += v.c_projected;
    m.c_full += v.c_full;
    m.s_a += v.s_a;
    m.denominator += v.denominator;
    m.expectation += v.expectation;
  }
  const double k = static_cast<double>(samples.size());
  m.c_projected /= k;
  m.c_full /= k;
  m.s_a /= k;
  m.denominator /= k;
  m.expectation /= k;
  return m;
}

EstimateReport report_from_values(const EstimatorValues& values) {
  EstimateReport r;
  r.c_ab_projected = values.c_projected;
  r.c_ab_full = values.c_full;
  r.s_a = values.s_a;
  if (values.denominator > 0.0) {
    r.e_a = values.c_projected / values.denominator;
  }
  return r;
}

double itcf_projected(const StateVector& state, const DiagonalObservable& obs,
                      UpProjector proj) {
  return exact_values(state, obs, proj).c_projected;
}

double itcf_full(const StateVector& state, const DiagonalObservable& obs,
                 UpProjector proj) {
  return exact_values(state, obs, proj).c_full;
}

double exact_trace_itcf(const DiagonalObservable& obs, UpProjector proj,
                        int n_qubits) {
  if (n_qubits < 1 || n_qubits > 16) {
    throw CapacityError("exhaustive trace requires n_qubits in [1, 16], got " +
                        std::to_string(n_qubits));
  }
  if (obs.n_qubits() != n_qubits) {
    throw ArgumentError("observable is for " +
                        std::to_string(obs.n_qubits()) + " qubits, expected " +
                        std::to_string(n_qubits));
  }
  check_projector(proj.qubit, n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  const std::uint64_t bit = std::uint64_t{1} << proj.qubit;
  double sum = 0.0;
  for (std::uint64_t z = 0; z < dim; ++z) {
    const double b = (z & bit) ? -1.0 : 1.0;
    sum += obs.value(z) * b;
  }
  return sum / static_cast<double>(dim);
}

double support_overlap(const StateVector& state, const DiagonalObservable& obs,
                       UpProjector proj) {
  return exact_values(state, obs, proj).s_a;
}

double biased_ratio(const StateVector& state, const DiagonalObservable& obs,
                    UpProjector proj) {
  const EstimatorValues v = exact_values(state, obs, proj);
  if (v.denominator <= 0.0) {
    throw UndefinedRatioError(
        "biased ratio undefined: no weight on nonzero observable entries in "
        "the projected subspace");
  }
  return v.c_projected / v.denominator;
}

double diag_expectation(const StateVector& state,
                        const DiagonalObservable& obs) {
  if (obs.n_qubits() != state.n_qubits()) {
    throw ArgumentError("observable is for " +
                        std::to_string(obs.n_qubits()) + " qubits, state has " +
                        std::to_string(state.n_qubits()));
  }
  const std::vector<amp_t>& amps = state.amplitudes();
  double sum = 0.0;
  for (std::uint64_t z = 0; z < amps.size(); ++z) {
    sum += std::norm(amps[z]) * obs.value(z);
  }
  return sum;
}

EstimateReport shot_estimates(const ShotHistogram& hist,
                              const DiagonalObservable& obs,
                              UpProjector proj) {
  EstimateReport r = report_from_values(values_from_histogram(hist, obs, proj));
  r.method = "custom";
  r.n_qubits = hist.n_qubits;
  r.shots_used = hist.total_shots;
  return r;
}

StateVector project_up(const StateVector& state, UpProjector proj) {
  check_projector(proj.qubit, state.n_qubits());
  std::vector<amp_t> amps = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << proj.qubit;
  for (std::uint64_t z = 0; z < amps.size(); ++z) {
    if (z & bit) amps[z] = amp_t{0.0, 0.0};
  }
  return StateVector::unchecked(state.n_qubits(), std::move(amps), true);
}

HaarAverage haar_average_itcf(int n_qubits, const DiagonalObservable& obs,
                              UpProjector proj, int num_states,
                              std::uint64_t seed) {
  if (num_states < 1) {
    throw ArgumentError("num_states must be >= 1, got " +
                        std::to_string(num_states));
  }
  HaarAverage out;
  out.samples.reserve(static_cast<std::size_t>(num_states));
  for (int i = 0; i < num_states; ++i) {
    const StateVector state = haar_random_state(
        n_qubits, derive_seed(seed, kSeedDomainHaarSample,
                              static_cast<std::uint64_t>(i)));
    out.samples.push_back(exact_values(state, obs, proj));
  }
  const EstimatorValues mean = mean_values(out.samples);
  if (num_states > 1) {
    double ssq_c = 0.0;
    double ssq_e = 0.0;
    for (const EstimatorValues& v : out.samples) {
      ssq_c += (v.c_projected - mean.c_projected) *
               (v.c_projected - mean.c_projected);
      ssq_e += (v.expectation - mean.expectation) *
               (v.expectation - mean.expectation);
    }
    out.variance_c_projected = ssq_c / static_cast<double>(num_states - 1);
    out.variance_expectation = ssq_e / static_cast<double>(num_states - 1);
  }
  out.report = report_from_values(mean);
  out.report.method = "haar";
  out.report.n_qubits = n_qubits;
  out.report.shots_used = 0;
  out.report.seed = seed;
  return out;
}

}  // namespace peaked
