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
#include <vector>

#include "peaked/circuits.hpp"
#include "peaked/estimators.hpp"

namespace peaked {

/// Stochastic Pauli noise strengths: after every elementary gate, with the
/// gate-class probability, a uniformly random non-identity Pauli hits the
/// touched qubit(s).
struct NoiseParams {
  double p1 = 0.0;  // per single-qubit gate
  double p2 = 0.0;  // per two-qubit gate
  int trajectories = 1000;

  void validate() const;
  ordered_json to_json() const;
  static NoiseParams from_json(const ordered_json& j);

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

/// Trajectory-averaged estimator outputs. The report carries the pooled
/// (trajectory-mean) metrics with e_a = mean(c)/mean(denominator) so the
/// ratio identity survives averaging.
struct NoisyResult {
  EstimateReport report;
  EstimatorValues pooled;
  std::vector<EstimatorValues> per_trajectory;
};

/// Runs `noise.trajectories` independent noisy executions of the circuit
/// (lowered first; noise attaches to elementary gates only) and averages
/// the exact estimator values. Deterministic in the seed: trajectory t
/// uses a derived substream, and each gate consumes a fixed number of
/// draws whether or not an error triggers, so different noise levels on
/// the same seed see nested error sets.
NoisyResult apply_noisy_circuit(const StateVector& state,
                                const Circuit& circuit,
                                const NoiseParams& noise,
                                const DiagonalObservable& obs,
                                UpProjector proj, std::uint64_t seed);

/// One noisy execution, for inspection and tests.
StateVector noisy_trajectory_state(const StateVector& state,
                                   const Circuit& lowered, double p1,
                                   double p2, std::uint64_t trajectory_seed);

/// Measurement histogram pooled across trajectories: shots are split as
/// evenly as possible (first shots mod trajectories get one extra).
ShotHistogram noisy_measure_sample(const StateVector& state,
                                   const Circuit& circuit,
                                   const NoiseParams& noise,
                                   std::uint64_t shots, std::uint64_t seed);

}  // namespace peaked
