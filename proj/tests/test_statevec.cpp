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

#include "peaked/statevec.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "peaked/errors.hpp"
#include "peaked/observables.hpp"
#include "peaked/rng.hpp"

using namespace peaked;

namespace {

constexpr double kTol = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double norm_sq(const StateVector& state) {
  double total = 0.0;
  for (const amp_t& a : state.amplitudes()) total += std::norm(a);
  return total;
}

double max_diff(const StateVector& lhs, const StateVector& rhs) {
  double worst = 0.0;
  for (std::size_t z = 0; z < lhs.amplitudes().size(); ++z) {
    worst = std::max(worst,
                     std::abs(lhs.amplitudes()[z] - rhs.amplitudes()[z]));
  }
  return worst;
}

}  // namespace

TEST_CASE("zero_state is |0...0>") {
  const StateVector state = zero_state(3);
  CHECK(state.n_qubits() == 3);
  REQUIRE(state.amplitudes().size() == 8);
  CHECK(std::abs(state.amplitudes()[0] - amp_t{1.0, 0.0}) < kTol);
  for (std::size_t z = 1; z < 8; ++z) {
    CHECK(std::abs(state.amplitudes()[z]) == 0.0);
  }
}

TEST_CASE("constructor validates width, size, and norm") {
  CHECK_THROWS_AS(zero_state(kMaxQubits + 1), CapacityError);
  CHECK_THROWS_AS(zero_state(0), CapacityError);
  CHECK_THROWS_AS(StateVector(1, {amp_t{1.0, 0.0}}), ArgumentError);
  CHECK_THROWS_AS(StateVector(1, {amp_t{1.0, 0.0}, amp_t{1.0, 0.0}}),
                  ContractError);
}

TEST_CASE("single-qubit gates match their matrices") {
  SUBCASE("H on |0> gives the uniform superposition") {
    const StateVector state = apply_gate(zero_state(1), Gate::h(0));
    CHECK(std::abs(state.amplitudes()[0] - kInvSqrt2) < kTol);
    CHECK(std::abs(state.amplitudes()[1] - kInvSqrt2) < kTol);
  }
  SUBCASE("H is an involution") {
    StateVector state = haar_random_state(4, 11);
    const StateVector original = state;
    apply_gate_inplace(state, Gate::h(2));
    apply_gate_inplace(state, Gate::h(2));
    CHECK(max_diff(state, original) < kTol);
  }
  SUBCASE("X flips the addressed qubit only") {
    const StateVector state = apply_gate(zero_state(3), Gate::x(2));
    CHECK(std::abs(state.amplitudes()[4] - amp_t{1.0, 0.0}) < kTol);
  }
  SUBCASE("Ry rotates |0> toward |1>") {
    const double theta = 0.7;
    const StateVector state = apply_gate(zero_state(1), Gate::ry(0, theta));
    CHECK(std::abs(state.amplitudes()[0] - std::cos(theta / 2)) < kTol);
    CHECK(std::abs(state.amplitudes()[1] - std::sin(theta / 2)) < kTol);
  }
  SUBCASE("Rz applies opposite half-angle phases") {
    const double phi = 0.9;
    StateVector state = apply_gate(zero_state(1), Gate::h(0));
    apply_gate_inplace(state, Gate::rz(0, phi));
    const amp_t lo = state.amplitudes()[0];
    const amp_t hi = state.amplitudes()[1];
    CHECK(std::abs(lo - kInvSqrt2 * std::exp(amp_t{0.0, -phi / 2})) < kTol);
    CHECK(std::abs(hi - kInvSqrt2 * std::exp(amp_t{0.0, phi / 2})) < kTol);
  }
  SUBCASE("qubit index out of range") {
    CHECK_THROWS_AS(apply_gate(zero_state(2), Gate::h(2)), ArgumentError);
  }
}

TEST_CASE("two-qubit gates match their matrices") {
  SUBCASE("CNOT flips the target when the control is set") {
    StateVector state = apply_gate(zero_state(2), Gate::x(0));
    apply_gate_inplace(state, Gate::cnot(0, 1));
    CHECK(std::abs(state.amplitudes()[3] - amp_t{1.0, 0.0}) < kTol);
  }
  SUBCASE("CNOT leaves the target alone when the control is clear") {
    StateVector state = apply_gate(zero_state(2), Gate::x(1));
    apply_gate_inplace(state, Gate::cnot(0, 1));
    CHECK(std::abs(state.amplitudes()[2] - amp_t{1.0, 0.0}) < kTol);
  }
  SUBCASE("CZ negates exactly the |11> component") {
    StateVector state = zero_state(2);
    apply_gate_inplace(state, Gate::h(0));
    apply_gate_inplace(state, Gate::h(1));
    apply_gate_inplace(state, Gate::cz(0, 1));
    CHECK(std::abs(state.amplitudes()[0] - 0.5) < kTol);
    CHECK(std::abs(state.amplitudes()[1] - 0.5) < kTol);
    CHECK(std::abs(state.amplitudes()[2] - 0.5) < kTol);
    CHECK(std::abs(state.amplitudes()[3] + 0.5) < kTol);
  }
  SUBCASE("two-qubit gates reject equal endpoints") {
    CHECK_THROWS_AS(apply_gate(zero_state(2), Gate::cnot(1, 1)),
                    ArgumentError);
  }
}

TEST_CASE("random circuits preserve the norm") {
  StateVector state = haar_random_state(5, 3);
  Rng rng(17);
  for (int step = 0; step < 200; ++step) {
    const int q = static_cast<int>(rng.uniform_int(5));
    const int r = (q + 1 + static_cast<int>(rng.uniform_int(4))) % 5;
    switch (rng.uniform_int(5)) {
      case 0: apply_gate_inplace(state, Gate::h(q)); break;
      case 1: apply_gate_inplace(state, Gate::ry(q, rng.uniform())); break;
      case 2: apply_gate_inplace(state, Gate::rz(q, rng.uniform())); break;
      case 3: apply_gate_inplace(state, Gate::cnot(q, r)); break;
      default: apply_gate_inplace(state, Gate::cz(q, r)); break;
    }
  }
  CHECK(norm_sq(state) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("diffusion reflects about the uniform superposition") {
  SUBCASE("inverts amplitudes about their mean") {
    const StateVector state = StateVector(
        2, {amp_t{-0.5, 0.0}, amp_t{0.5, 0.0}, amp_t{0.5, 0.0},
            amp_t{0.5, 0.0}});
    const StateVector out = apply_gate(state, Gate::diffusion());
    CHECK(std::abs(out.amplitudes()[0] - amp_t{1.0, 0.0}) < kTol);
    CHECK(std::abs(out.amplitudes()[1]) < kTol);
    CHECK(std::abs(out.amplitudes()[2]) < kTol);
    CHECK(std::abs(out.amplitudes()[3]) < kTol);
  }
  SUBCASE("is an involution") {
    StateVector state = haar_random_state(6, 21);
    const StateVector original = state;
    apply_gate_inplace(state, Gate::diffusion());
    apply_gate_inplace(state, Gate::diffusion());
    CHECK(max_diff(state, original) < kTol);
  }
  SUBCASE("fixes the uniform superposition") {
    StateVector state = zero_state(3);
    for (int q = 0; q < 3; ++q) apply_gate_inplace(state, Gate::h(q));
    const StateVector out = apply_gate(state, Gate::diffusion());
    CHECK(max_diff(out, state) < kTol);
  }
}

TEST_CASE("phase oracle flips signs on the marked set only") {
  const OraclePredicate predicate =
      OraclePredicate::explicit_set(3, {1, 6});
  OracleRegistry::global().add(predicate);
  StateVector state = haar_random_state(3, 5);
  const StateVector original = state;
  apply_gate_inplace(state, phase_oracle_gate(predicate));
  for (std::size_t z = 0; z < 8; ++z) {
    const double sign = (z == 1 || z == 6) ? -1.0 : 1.0;
    CHECK(std::abs(state.amplitudes()[z] - sign * original.amplitudes()[z]) <
          kTol);
  }

  SUBCASE("applying twice restores the state") {
    apply_gate_inplace(state, phase_oracle_gate(predicate));
    CHECK(max_diff(state, original) < kTol);
  }
  SUBCASE("unregistered predicate ids are rejected") {
    Gate gate = phase_oracle_gate(predicate);
    gate.predicate_id = "never-registered";
    CHECK_THROWS_AS(apply_gate(original, gate), LookupError);
  }
  SUBCASE("register-width mismatch is rejected") {
    CHECK_THROWS_AS(apply_gate(zero_state(4), phase_oracle_gate(predicate)),
                    ArgumentError);
  }
}

TEST_CASE("haar_random_state is deterministic and uniform on average") {
  const StateVector a = haar_random_state(6, 99);
  const StateVector b = haar_random_state(6, 99);
  CHECK(max_diff(a, b) == 0.0);
  CHECK(max_diff(a, haar_random_state(6, 100)) > 1e-3);
  CHECK(norm_sq(a) == doctest::Approx(1.0).epsilon(1e-10));

  // Unitary invariance: E|amp_z|^2 = 2^-n for every z. With 400 seeds the
  // standard error of the mean at n=4 is about (1/16)/sqrt(400) ~ 0.003.
  const int n = 4;
  const int seeds = 400;
  std::vector<double> mean(16, 0.0);
  for (int s = 0; s < seeds; ++s) {
    const StateVector state = haar_random_state(n, 1000 + s);
    for (std::size_t z = 0; z < 16; ++z) {
      mean[z] += std::norm(state.amplitudes()[z]) / seeds;
    }
  }
  for (std::size_t z = 0; z < 16; ++z) {
    CHECK(mean[z] == doctest::Approx(1.0 / 16).epsilon(0.2));
  }
}

TEST_CASE("measure_sample draws from the amplitude distribution") {
  SUBCASE("deterministic states put every shot on one index") {
    const StateVector state = apply_gate(zero_state(3), Gate::x(1));
    const ShotHistogram hist = measure_sample(state, 64, 7);
    CHECK(hist.total_shots == 64);
    REQUIRE(hist.counts.size() == 1);
    CHECK(hist.counts.at(2) == 64);
  }
  SUBCASE("same seed gives the same histogram") {
    const StateVector state = haar_random_state(4, 3);
    const ShotHistogram a = measure_sample(state, 500, 11);
    const ShotHistogram b = measure_sample(state, 500, 11);
    CHECK(a.counts == b.counts);
    const ShotHistogram c = measure_sample(state, 500, 12);
    CHECK(a.counts != c.counts);
  }
  SUBCASE("frequencies approach the exact distribution") {
    StateVector state = zero_state(1);
    apply_gate_inplace(state, Gate::ry(0, std::numbers::pi / 3));
    // P(1) = sin^2(pi/6) = 1/4; 5 sigma at 40000 shots is ~0.011.
    const ShotHistogram hist = measure_sample(state, 40000, 13);
    const double p1 = static_cast<double>(hist.counts.at(1)) / 40000;
    CHECK(p1 == doctest::Approx(0.25).epsilon(0.05));
  }
  SUBCASE("zero shots are rejected") {
    CHECK_THROWS_AS(measure_sample(zero_state(1), 0, 1), ArgumentError);
  }
  SUBCASE("bitstring renders qubit 0 rightmost") {
    ShotHistogram hist;
    hist.n_qubits = 4;
    CHECK(hist.bitstring(1) == "0001");
    CHECK(hist.bitstring(8) == "1000");
    CHECK(hist.bitstring(6) == "0110");
  }
}
