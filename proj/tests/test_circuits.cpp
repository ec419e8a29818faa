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

#include "peaked/circuits.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "doctest.h"
#include "peaked/errors.hpp"
#include "peaked/observables.hpp"
#include "peaked/rng.hpp"
#include "peaked/statevec.hpp"
#include "qasm_sim.hpp"

using namespace peaked;

namespace {

ShallowSpec worked_example_spec() {
  ShallowSpec spec;
  spec.rotations = {{0, 'y', std::numbers::pi / 4},
                    {2, 'y', std::numbers::pi / 4},
                    {4, 'y', std::numbers::pi / 4}};
  spec.pairs = {{0, 2, false}, {2, 4, false}};
  return spec;
}

}  // namespace

TEST_CASE("shallow specs build in fixed layer order") {
  const Circuit circuit = build_shallow(5, worked_example_spec());
  CHECK(circuit.n_qubits == 5);
  REQUIRE(circuit.gates.size() == 5);
  CHECK(circuit.gates[0].kind == GateKind::kRy);
  CHECK(circuit.gates[3].kind == GateKind::kCnot);
  CHECK(circuit.metadata.at("builder") == "shallow");

  SUBCASE("hadamard set must be strictly increasing") {
    ShallowSpec spec;
    spec.hadamard_set = {2, 1};
    CHECK_THROWS_AS(build_shallow(3, spec), ArgumentError);
  }
  SUBCASE("rotation axis must be y or z") {
    ShallowSpec spec;
    spec.rotations = {{0, 'x', 1.0}};
    CHECK_THROWS_AS(build_shallow(3, spec), ArgumentError);
  }
  SUBCASE("pair endpoints must be distinct and in range") {
    ShallowSpec spec;
    spec.pairs = {{1, 1, false}};
    CHECK_THROWS_AS(build_shallow(3, spec), ArgumentError);
    spec.pairs = {{0, 3, true}};
    CHECK_THROWS_AS(build_shallow(3, spec), ArgumentError);
  }
}

TEST_CASE("shallow spec JSON round-trips and rejects unknown keys") {
  ShallowSpec spec = worked_example_spec();
  spec.hadamard_set = {1, 3};
  spec.final_phases = {{4, 0.25}};
  const ShallowSpec back = ShallowSpec::from_json(spec.to_json());
  CHECK(back == spec);

  ordered_json j = spec.to_json();
  j["extra"] = 1;
  CHECK_THROWS_AS(ShallowSpec::from_json(j), ArgumentError);
}

TEST_CASE("grover circuits are a Hadamard layer plus T oracle-diffusion rounds") {
  const DiagonalObservable obs = DiagonalObservable::zstring(4, {0});
  const OraclePredicate predicate = conjoined_oracle(obs, UpProjector{1});
  const Circuit circuit = build_grover(4, predicate, 3);
  REQUIRE(circuit.gates.size() == 4 + 2 * 3);
  for (int q = 0; q < 4; ++q) {
    CHECK(circuit.gates[q].kind == GateKind::kH);
  }
  for (int round = 0; round < 3; ++round) {
    CHECK(circuit.gates[4 + 2 * round].kind == GateKind::kPhaseOracle);
    CHECK(circuit.gates[4 + 2 * round + 1].kind == GateKind::kDiffusion);
  }
  CHECK(OracleRegistry::global().contains(predicate.id()));

  SUBCASE("iteration count is bounded") {
    CHECK_THROWS_AS(build_grover(4, predicate, -1), ArgumentError);
    CHECK_THROWS_AS(build_grover(4, predicate, kMaxGroverIterations + 1),
                    ArgumentError);
  }
  SUBCASE("degenerate predicates are rejected") {
    const std::uint64_t dim = 16;
    std::vector<std::uint64_t> all(dim);
    for (std::uint64_t z = 0; z < dim; ++z) all[z] = z;
    CHECK_THROWS_AS(
        build_grover(4, OraclePredicate::explicit_set(4, {}), 1),
        DegenerateOracleError);
    CHECK_THROWS_AS(build_grover(4, OraclePredicate::explicit_set(4, all), 1),
                    DegenerateOracleError);
  }
  SUBCASE("predicate register width must match") {
    CHECK_THROWS_AS(build_grover(5, predicate, 1), ArgumentError);
  }
}

TEST_CASE("grover closed form and simulation agree") {
  SUBCASE("known probabilities") {
    CHECK(grover_success_probability(1, 4, 1) == doctest::Approx(1.0));
    // Half the space marked: the rotation angle is pi/2, so every T lands
    // on probability exactly 1/2.
    for (int t = 0; t <= 10; ++t) {
      CHECK(grover_success_probability(8, 16, t) == doctest::Approx(0.5));
    }
  }
  SUBCASE("simulated marked probability matches the closed form") {
    for (const int n : {4, 8}) {
      const std::uint64_t dim = std::uint64_t{1} << n;
      for (const std::uint64_t m : {dim / 2, dim / 4, dim / 16}) {
        std::vector<std::uint64_t> marked(m);
        for (std::uint64_t z = 0; z < m; ++z) marked[z] = z;
        const OraclePredicate predicate =
            OraclePredicate::explicit_set(n, marked);
        for (int t = 0; t <= 10; ++t) {
          const StateVector state = apply_circuit(
              zero_state(n), build_grover(n, predicate, t));
          const double simulated = marked_probability(state, predicate);
          const double analytic = grover_success_probability(m, dim, t);
          CHECK(simulated == doctest::Approx(analytic).epsilon(1e-9));
        }
      }
    }
  }
  SUBCASE("argument validation") {
    CHECK_THROWS_AS(grover_success_probability(0, 4, 1), ArgumentError);
    CHECK_THROWS_AS(grover_success_probability(4, 4, 1), ArgumentError);
    CHECK_THROWS_AS(grover_success_probability(1, 4, -1), ArgumentError);
  }
}

TEST_CASE("optimal_iterations maximizes the closed form") {
  CHECK(optimal_iterations(1, 4) == 1);
  CHECK(optimal_iterations(1, 4096) == 50);
  // M = N/2 ties T=0 and T=1 at probability 1/2; the smaller circuit wins.
  CHECK(optimal_iterations(2048, 4096) == 0);

  // The rotation angle (2T+1)·asin(sqrt(M/N)) must land within one step
  // of the first peak at pi/2, and no iteration count inside that first
  // lobe may beat the returned one. Later lobes can edge slightly higher
  // but cost proportionally more iterations, so they are out of scope.
  for (const std::uint64_t m : {1ull, 3ull, 7ull, 100ull}) {
    const int best = optimal_iterations(m, 256);
    const double theta = std::asin(std::sqrt(static_cast<double>(m) / 256.0));
    CHECK(std::abs((2 * best + 1) * theta - std::numbers::pi / 2.0) <=
          theta + 1e-12);
    const double p_best = grover_success_probability(m, 256, best);
    const int lobe_end =
        static_cast<int>((std::numbers::pi / theta - 1.0) / 2.0);
    for (int t = 0; t <= lobe_end; ++t) {
      CHECK(p_best >= grover_success_probability(m, 256, t) - 1e-12);
    }
  }
}

TEST_CASE("apply_circuit validates the register width") {
  const Circuit circuit = build_shallow(3, ShallowSpec{});
  CHECK_THROWS_AS(apply_circuit(zero_state(4), circuit), ArgumentError);
}

TEST_CASE("circuit metadata rebuilds the same circuit") {
  const DiagonalObservable obs = DiagonalObservable::zstring(4, {0, 2});
  const Circuit grover =
      build_grover(4, conjoined_oracle(obs, UpProjector{1}), 2);
  const Circuit grover_back = circuit_from_metadata(grover.metadata);
  CHECK(grover_back.gates == grover.gates);
  CHECK(grover_back.n_qubits == grover.n_qubits);

  const Circuit shallow = build_shallow(5, worked_example_spec());
  const Circuit shallow_back = circuit_from_metadata(shallow.metadata);
  CHECK(shallow_back.gates == shallow.gates);

  ordered_json bad;
  bad["builder"] = "unknown";
  CHECK_THROWS_AS(circuit_from_metadata(bad), ArgumentError);
}

TEST_CASE("lowering reproduces abstract semantics") {
  Rng rng(31);
  const auto check_equivalent = [&](const Circuit& circuit, int n) {
    const Circuit lowered = lower_circuit(circuit);
    for (const Gate& g : lowered.gates) {
      CHECK_FALSE(g.is_abstract());
    }
    const StateVector input = haar_random_state(n, rng.next_u64());
    const StateVector a = apply_circuit(input, circuit);
    const StateVector b = apply_circuit(input, lowered);
    CHECK(qasmsim::max_error_up_to_phase(a, b) < 1e-9);
  };

  SUBCASE("sign-positive oracles") {
    for (int n = 2; n <= 6; ++n) {
      const DiagonalObservable obs =
          DiagonalObservable::zstring(n, {0, n - 1});
      Circuit circuit;
      circuit.n_qubits = n;
      circuit.gates = {phase_oracle_gate(heaviside_oracle(obs))};
      check_equivalent(circuit, n);
    }
  }
  SUBCASE("conjoined oracles") {
    for (int n = 3; n <= 6; ++n) {
      const DiagonalObservable obs =
          DiagonalObservable::zstring(n, {0, n - 1});
      Circuit circuit;
      circuit.n_qubits = n;
      circuit.gates = {
          phase_oracle_gate(conjoined_oracle(obs, UpProjector{1}))};
      check_equivalent(circuit, n);
    }
  }
  SUBCASE("singleton explicit sets become multi-controlled Z") {
    for (int n = 1; n <= 6; ++n) {
      const std::uint64_t z =
          rng.uniform_int(std::uint64_t{1} << n);
      Circuit circuit;
      circuit.n_qubits = n;
      circuit.gates = {
          phase_oracle_gate(OraclePredicate::explicit_set(n, {z}))};
      check_equivalent(circuit, n);
    }
  }
  SUBCASE("bit conjunctions") {
    Circuit circuit;
    circuit.n_qubits = 5;
    circuit.gates = {phase_oracle_gate(
        OraclePredicate::bit_conjunction(5, {{0, 0}, {2, 1}, {4, 0}}))};
    check_equivalent(circuit, 5);
  }
  SUBCASE("diffusion") {
    for (int n = 1; n <= 6; ++n) {
      Circuit circuit;
      circuit.n_qubits = n;
      circuit.gates = {Gate::diffusion()};
      check_equivalent(circuit, n);
    }
  }
  SUBCASE("full grover stacks") {
    const DiagonalObservable obs = DiagonalObservable::zstring(5, {0, 3});
    const Circuit circuit =
        build_grover(5, conjoined_oracle(obs, UpProjector{1}), 3);
    check_equivalent(circuit, 5);
  }
  SUBCASE("multi-element explicit sets cannot be lowered") {
    Circuit circuit;
    circuit.n_qubits = 3;
    circuit.gates = {
        phase_oracle_gate(OraclePredicate::explicit_set(3, {1, 5}))};
    CHECK_THROWS_AS(lower_circuit(circuit), UnsupportedOracleError);
  }
}

TEST_CASE("exported QASM is exact and re-simulates to the same state") {
  const Circuit circuit = build_shallow(3, [] {
    ShallowSpec spec;
    spec.hadamard_set = {0, 1, 2};
    spec.rotations = {{1, 'y', 0.3}, {2, 'z', -1.25}};
    spec.pairs = {{0, 1, false}, {1, 2, true}};
    spec.final_phases = {{0, 0.5}};
    return spec;
  }());
  const std::string text = export_qasm(circuit);

  SUBCASE("header is the fixed three lines") {
    CHECK(text.rfind("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\n",
                     0) == 0);
  }
  SUBCASE("re-simulation matches") {
    const StateVector reference = apply_circuit(zero_state(3), circuit);
    const StateVector replayed = qasmsim::run(text);
    CHECK(qasmsim::max_error_up_to_phase(reference, replayed) < 1e-12);
  }
  SUBCASE("abstract circuits are lowered on export") {
    Circuit abstract;
    abstract.n_qubits = 2;
    abstract.gates = {Gate::diffusion()};
    CHECK(export_qasm(abstract) == export_qasm(lower_circuit(abstract)));
  }
  SUBCASE("unlowerable oracles are rejected at export") {
    const Circuit stuck =
        build_grover(3, OraclePredicate::explicit_set(3, {1, 5}), 1);
    CHECK_THROWS_AS(export_qasm(stuck), UnsupportedOracleError);
  }
  SUBCASE("angles round-trip through text exactly") {
    const Circuit replay_circuit = build_shallow(2, [] {
      ShallowSpec spec;
      spec.rotations = {{0, 'y', 1.0 / 3.0}, {1, 'z', std::numbers::pi}};
      return spec;
    }());
    const StateVector reference = apply_circuit(zero_state(2), replay_circuit);
    const StateVector replayed = qasmsim::run(export_qasm(replay_circuit));
    CHECK(qasmsim::max_error_up_to_phase(reference, replayed) == 0.0);
  }
}

TEST_CASE("circuit depth counts greedy parallel layers") {
  SUBCASE("one layer of Hadamards") {
    Circuit circuit;
    circuit.n_qubits = 4;
    for (int q = 0; q < 4; ++q) circuit.gates.push_back(Gate::h(q));
    CHECK(circuit_depth(circuit) == 1);
  }
  SUBCASE("chained CNOTs serialize") {
    Circuit circuit;
    circuit.n_qubits = 4;
    circuit.gates = {Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(2, 3)};
    CHECK(circuit_depth(circuit) == 3);
  }
  SUBCASE("abstract gates span the register") {
    Circuit circuit;
    circuit.n_qubits = 4;
    circuit.gates = {Gate::h(0), Gate::diffusion(), Gate::h(3)};
    CHECK(circuit_depth(circuit) == 3);
  }
  SUBCASE("lowered grover depth grows with T") {
    const DiagonalObservable obs = DiagonalObservable::zstring(4, {0, 2});
    const OraclePredicate predicate = conjoined_oracle(obs, UpProjector{1});
    int previous = 0;
    for (int t = 1; t <= 4; ++t) {
      const int depth =
          circuit_depth(lower_circuit(build_grover(4, predicate, t)));
      CHECK(depth > previous);
      previous = depth;
    }
  }
}
