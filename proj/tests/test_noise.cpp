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

#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "peaked/circuits.hpp"
#include "peaked/errors.hpp"
#include "peaked/estimators.hpp"
#include "peaked/observables.hpp"
#include "peaked/statevec.hpp"

using namespace peaked;

namespace {

Circuit grover_test_circuit(int n, int t) {
  const DiagonalObservable obs = DiagonalObservable::zstring(n, {0});
  return build_grover(n, conjoined_oracle(obs, UpProjector{1}), t);
}

}  // namespace

TEST_CASE("NoiseParams validates and round-trips") {
  NoiseParams params;
  params.p1 = 1e-3;
  params.p2 = 1e-2;
  params.trajectories = 250;
  params.validate();
  CHECK(NoiseParams::from_json(params.to_json()) == params);

  SUBCASE("probabilities must lie in [0, 1]") {
    NoiseParams bad = params;
    bad.p1 = -0.1;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
    bad = params;
    bad.p2 = 1.5;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
  }
  SUBCASE("at least one trajectory") {
    NoiseParams bad = params;
    bad.trajectories = 0;
    CHECK_THROWS_AS(bad.validate(), ArgumentError);
  }
  SUBCASE("unknown JSON keys are rejected") {
    ordered_json j = params.to_json();
    j["p3"] = 0.5;
    CHECK_THROWS_AS(NoiseParams::from_json(j), ArgumentError);
  }
}

TEST_CASE("zero noise reproduces the noiseless run exactly") {
  const Circuit circuit = grover_test_circuit(4, 2);
  const DiagonalObservable obs = DiagonalObservable::zstring(4, {0});
  const UpProjector proj{1};
  const StateVector initial = zero_state(4);

  NoiseParams off;
  off.trajectories = 7;
  const NoisyResult result =
      apply_noisy_circuit(initial, circuit, off, obs, proj, 99);
  const EstimatorValues exact =
      exact_values(apply_circuit(initial, circuit), obs, proj);

  CHECK(result.per_trajectory.size() == 7);
  CHECK(result.pooled.c_projected ==
        doctest::Approx(exact.c_projected).epsilon(1e-12));
  CHECK(result.pooled.s_a == doctest::Approx(exact.s_a).epsilon(1e-12));
  CHECK(result.report.method == "custom");
}

TEST_CASE("noisy runs are deterministic in the seed") {
  const Circuit circuit = grover_test_circuit(4, 2);
  const DiagonalObservable obs = DiagonalObservable::zstring(4, {0});
  const UpProjector proj{1};

  NoiseParams params;
  params.p1 = 0.01;
  params.p2 = 0.05;
  params.trajectories = 50;

  const NoisyResult a =
      apply_noisy_circuit(zero_state(4), circuit, params, obs, proj, 3);
  const NoisyResult b =
      apply_noisy_circuit(zero_state(4), circuit, params, obs, proj, 3);
  const NoisyResult c =
      apply_noisy_circuit(zero_state(4), circuit, params, obs, proj, 4);
  CHECK(a.report == b.report);
  CHECK(a.report != c.report);
}

TEST_CASE("full single-qubit depolarization kills the Z signal") {
  // Eight X gates on one qubit, each followed by a uniformly random Pauli
  // at probability 1: the surviving bias shrinks by 1/3 per gate, so the
  // signal sits at 3^-8 ~ 1e-4, far inside the Monte-Carlo band.
  Circuit circuit;
  circuit.n_qubits = 2;
  for (int i = 0; i < 8; ++i) circuit.gates.push_back(Gate::x(0));

  NoiseParams params;
  params.p1 = 1.0;
  params.trajectories = 10000;

  const DiagonalObservable obs = DiagonalObservable::zstring(2, {0});
  const NoisyResult result = apply_noisy_circuit(
      zero_state(2), circuit, params, obs, UpProjector{1}, 11);
  // Per-trajectory <Z> is +/-1, so the standard error is 1/sqrt(10^4).
  CHECK(std::abs(result.pooled.expectation) < 0.03);
}

TEST_CASE("two-qubit noise leaves single-qubit-only circuits untouched") {
  Circuit circuit;
  circuit.n_qubits = 3;
  circuit.gates = {Gate::h(0), Gate::ry(1, 0.4), Gate::h(2)};

  NoiseParams params;
  params.p2 = 1.0;
  params.trajectories = 5;

  const DiagonalObservable obs = DiagonalObservable::zstring(3, {0});
  const UpProjector proj{1};
  const NoisyResult result =
      apply_noisy_circuit(zero_state(3), circuit, params, obs, proj, 17);
  const EstimatorValues exact =
      exact_values(apply_circuit(zero_state(3), circuit), obs, proj);
  CHECK(result.pooled.c_projected ==
        doctest::Approx(exact.c_projected).epsilon(1e-12));
}

TEST_CASE("signal degrades monotonically as noise scales up") {
  // T = 1 is the amplification peak for a quarter-marked space, so the
  // noiseless signal starts at 1 and noise can only pull it down.
  const Circuit circuit = grover_test_circuit(6, 1);
  const DiagonalObservable obs = DiagonalObservable::zstring(6, {0});
  const UpProjector proj{1};

  double previous = exact_values(apply_circuit(zero_state(6), circuit), obs,
                                 proj)
                        .c_projected;
  for (const double scale : {1.0, 2.0, 4.0}) {
    NoiseParams params;
    params.p1 = 1e-3 * scale;
    params.p2 = 1e-2 * scale;
    params.trajectories = 2000;
    const NoisyResult result =
        apply_noisy_circuit(zero_state(6), circuit, params, obs, proj, 29);
    // Same seed at every level: triggers use a shared uniform draw, so
    // the error sets are nested and the ordering is near-deterministic.
    CHECK(std::abs(result.pooled.c_projected) < std::abs(previous) + 0.02);
    previous = result.pooled.c_projected;
  }
}

TEST_CASE("abstract circuits are lowered before noise is attached") {
  const Circuit circuit = grover_test_circuit(3, 1);
  NoiseParams params;
  params.p1 = 0.5;
  params.p2 = 0.5;
  params.trajectories = 20;
  const DiagonalObservable obs = DiagonalObservable::zstring(3, {0});

  // A multi-element explicit set cannot be lowered, so noisy execution
  // must refuse it rather than silently running it noise-free.
  Circuit unlowerable;
  unlowerable.n_qubits = 3;
  unlowerable.gates = {
      phase_oracle_gate(OraclePredicate::explicit_set(3, {1, 5}))};
  CHECK_THROWS_AS(apply_noisy_circuit(zero_state(3), unlowerable, params, obs,
                                      UpProjector{1}, 1),
                  UnsupportedOracleError);

  // Lowered execution sees elementary gates only; with p = 1 every gate
  // draws noise, which perturbs the ideal amplified distribution.
  const NoisyResult noisy = apply_noisy_circuit(zero_state(3), circuit,
                                                params, obs, UpProjector{1},
                                                31);
  const EstimatorValues exact =
      exact_values(apply_circuit(zero_state(3), circuit), obs, UpProjector{1});
  CHECK(noisy.pooled.c_projected != doctest::Approx(exact.c_projected));
}

TEST_CASE("noisy sampling pools trajectories deterministically") {
  const Circuit circuit = grover_test_circuit(4, 1);
  NoiseParams params;
  params.p1 = 0.02;
  params.p2 = 0.05;
  params.trajectories = 64;

  const ShotHistogram a =
      noisy_measure_sample(zero_state(4), circuit, params, 1000, 7);
  const ShotHistogram b =
      noisy_measure_sample(zero_state(4), circuit, params, 1000, 7);
  CHECK(a.total_shots == 1000);
  CHECK(a.counts == b.counts);

  std::uint64_t total = 0;
  for (const auto& [z, count] : a.counts) total += count;
  CHECK(total == 1000);

  SUBCASE("fewer shots than trajectories still works") {
    const ShotHistogram sparse =
        noisy_measure_sample(zero_state(4), circuit, params, 5, 7);
    CHECK(sparse.total_shots == 5);
  }
  SUBCASE("zero shots are rejected") {
    CHECK_THROWS_AS(
        noisy_measure_sample(zero_state(4), circuit, params, 0, 7),
        ArgumentError);
  }
}
