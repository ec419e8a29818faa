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

#include "peaked/noise.hpp"

#include "peaked/rng.hpp"

namespace peaked {

namespace {

// Pauli codes: 0 identity, 1 X, 2 Y, 3 Z.
void apply_pauli(StateVector& state, int q, int pauli) {
  std::vector<amp_t>& a = state.amplitudes_mut();
  const std::uint64_t bit = std::uint64_t{1} << q;
  switch (pauli) {
    case 1:
      for (std::uint64_t z = 0; z < a.size(); ++z) {
        if (!(z & bit)) std::swap(a[z], a[z | bit]);
      }
      break;
    case 2:
      for (std::uint64_t z = 0; z < a.size(); ++z) {
        if (!(z & bit)) {
          const amp_t a0 = a[z];
          const amp_t a1 = a[z | bit];
          a[z] = amp_t{a1.imag(), -a1.real()};        // -i * a1
          a[z | bit] = amp_t{-a0.imag(), a0.real()};  // +i * a0
        }
      }
      break;
    case 3:
      for (std::uint64_t z = 0; z < a.size(); ++z) {
        if (z & bit) a[z] = -a[z];
      }
      break;
    default:
      break;
  }
}

// Every elementary gate consumes exactly two draws (trigger uniform plus
// Pauli choice) regardless of the probabilities, so trajectories with the
// same seed stay aligned across noise levels: scaling (p1, p2) up only
// grows the triggered set.
void run_trajectory(StateVector& state, const Circuit& lowered, double p1,
                    double p2, Rng& rng) {
  for (const Gate& g : lowered.gates) {
    apply_gate_inplace(state, g);
    if (g.is_single_qubit()) {
      const double u = rng.uniform();
      const int pauli = 1 + static_cast<int>(rng.uniform_int(3));
      if (u < p1) apply_pauli(state, g.q0, pauli);
    } else if (g.is_two_qubit()) {
      const double u = rng.uniform();
      const int code = 1 + static_cast<int>(rng.uniform_int(15));
      if (u < p2) {
        apply_pauli(state, g.q0, code >> 2);
        apply_pauli(state, g.q1, code & 3);
      }
    }
  }
}

}  // namespace

void NoiseParams::validate() const {
  if (p1 < 0.0 || p1 > 1.0 || p2 < 0.0 || p2 > 1.0) {
    throw ArgumentError("noise probabilities must lie in [0, 1]");
  }
  if (trajectories < 1) {
    throw ArgumentError("trajectory count must be >= 1, got " +
                        std::to_string(trajectories));
  }
}

ordered_json NoiseParams::to_json() const {
  ordered_json j;
  j["p1"] = p1;
  j["p2"] = p2;
  j["trajectories"] = trajectories;
  return j;
}

NoiseParams NoiseParams::from_json(const ordered_json& j) {
  NoiseParams n;
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "p1" && key != "p2" && key != "trajectories") {
      throw ArgumentError("noise: unknown field '" + key + "'");
    }
  }
  if (j.contains("p1")) n.p1 = j.at("p1").get<double>();
  if (j.contains("p2")) n.p2 = j.at("p2").get<double>();
  if (j.contains("trajectories")) {
    n.trajectories = j.at("trajectories").get<int>();
  }
  n.validate();
  return n;
}

StateVector noisy_trajectory_state(const StateVector& state,
                                   const Circuit& lowered, double p1,
                                   double p2, std::uint64_t trajectory_seed) {
  StateVector out = state;
  Rng rng(trajectory_seed);
  run_trajectory(out, lowered, p1, p2, rng);
  return out;
}

NoisyResult apply_noisy_circuit(const StateVector& state,
                                const Circuit& circuit,
                                const NoiseParams& noise,
                                const DiagonalObservable& obs,
                                UpProjector proj, std::uint64_t seed) {
  noise.validate();
  const Circuit lowered = lower_circuit(circuit);
  NoisyResult result;
  result.per_trajectory.reserve(static_cast<std::size_t>(noise.trajectories));
  for (int t = 0; t < noise.trajectories; ++t) {
    StateVector final_state = noisy_trajectory_state(
        state, lowered, noise.p1, noise.p2,
        derive_seed(seed, kSeedDomainTrajectory, static_cast<std::uint64_t>(t)));
    result.per_trajectory.push_back(exact_values(final_state, obs, proj));
  }
  result.pooled = mean_values(result.per_trajectory);
  result.report = report_from_values(result.pooled);
  result.report.method = "custom";
  result.report.n_qubits = state.n_qubits();
  result.report.shots_used = 0;
  result.report.seed = seed;
  return result;
}

ShotHistogram noisy_measure_sample(const StateVector& state,
                                   const Circuit& circuit,
                                   const NoiseParams& noise,
                                   std::uint64_t shots, std::uint64_t seed) {
  noise.validate();
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  const Circuit lowered = lower_circuit(circuit);
  const std::uint64_t k = static_cast<std::uint64_t>(noise.trajectories);
  ShotHistogram pooled;
  pooled.n_qubits = state.n_qubits();
  pooled.total_shots = shots;
  for (std::uint64_t t = 0; t < k; ++t) {
    const std::uint64_t slice = shots / k + (t < shots % k ? 1 : 0);
    if (slice == 0) continue;
    const StateVector final_state = noisy_trajectory_state(
        state, lowered, noise.p1, noise.p2,
        derive_seed(seed, kSeedDomainTrajectory, t));
    const ShotHistogram h = measure_sample(
        final_state, slice, derive_seed(seed, kSeedDomainShots, t));
    for (const auto& [z, count] : h.counts) pooled.counts[z] += count;
  }
  return pooled;
}

}  // namespace peaked
