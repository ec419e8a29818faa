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
#include <string>
#include <vector>

#include "peaked/observables.hpp"
#include "peaked/statevec.hpp"

namespace peaked {

/// Iteration cap for amplification builders; generous for every
/// marked-fraction this toolkit sweeps (optimal T at M/N = 2^-12 is 50).
inline constexpr int kMaxGroverIterations = 64;

/// Ordered gate list over a fixed register. `metadata` records exactly how
/// the circuit was built (builder name and all inputs) and round-trips
/// through circuit_from_metadata.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  ordered_json metadata;
};

struct ShallowRotation {
  int qubit = 0;
  char axis = 'y';  // 'y' or 'z'
  double angle = 0.0;

  friend bool operator==(const ShallowRotation&,
                         const ShallowRotation&) = default;
};

struct EntanglingPair {
  int control = 0;
  int target = 0;
  bool is_cz = false;  // false = CNOT

  friend bool operator==(const EntanglingPair&,
                         const EntanglingPair&) = default;
};

struct FinalPhase {
  int qubit = 0;
  double angle = 0.0;

  friend bool operator==(const FinalPhase&, const FinalPhase&) = default;
};

/// Recipe for a shallow structured circuit: an optional Hadamard layer, a
/// list of single-qubit rotations, entangling pairs, and trailing phase
/// rotations, applied in exactly that order.
struct ShallowSpec {
  std::vector<int> hadamard_set;  // strictly increasing
  std::vector<ShallowRotation> rotations;
  std::vector<EntanglingPair> pairs;
  std::vector<FinalPhase> final_phases;

  ordered_json to_json() const;
  static ShallowSpec from_json(const ordered_json& j);

  friend bool operator==(const ShallowSpec&, const ShallowSpec&) = default;
};

/// Amplitude-amplification circuit: a Hadamard layer, then T repetitions
/// of [PhaseOracle(predicate), Diffusion]. The predicate is registered
/// globally as a side effect so the returned circuit is directly
/// applicable. Requires 0 <= T <= 64 and a non-degenerate predicate
/// (1 <= M < 2^n).
Circuit build_grover(int n_qubits, const OraclePredicate& predicate, int t);

/// Closed-form success probability sin^2((2T+1) asin(sqrt(M/N))) of
/// measuring a marked index after T iterations. Requires 1 <= M < N.
double grover_success_probability(std::uint64_t marked, std::uint64_t total,
                                  int t);

/// The T maximizing the closed form, candidates floor/ceil of
/// pi/(4 asin(sqrt(M/N))) - 1/2; exact ties resolve to the smaller T
/// (less depth for equal amplification).
int optimal_iterations(std::uint64_t marked, std::uint64_t total);

/// Builds a circuit from a ShallowSpec: Hadamards, rotations, entangling
/// pairs, final phases, in that order.
Circuit build_shallow(int n_qubits, const ShallowSpec& spec);

/// Probability mass on the predicate's marked set.
double marked_probability(const StateVector& state,
                          const OraclePredicate& predicate);

/// Applies gates left to right. Qubit-count bookkeeping only; norm is
/// preserved by the gate kernels themselves.
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

/// Expands abstract PhaseOracle/Diffusion blocks into {h, x, ry, rz, cx,
/// cz} using an ancilla-free multi-controlled-Z network. The result is
/// equivalent to the input up to a global phase. Throws
/// UnsupportedOracleError (naming the predicate) for oracles with no
/// bit-constraint/parity structure: explicit sets larger than one element.
Circuit lower_circuit(const Circuit& circuit);

/// OpenQASM 2.0 text of the lowered circuit. Header is exactly
/// `OPENQASM 2.0;` / `include "qelib1.inc";` / `qreg q[n];`.
std::string export_qasm(const Circuit& circuit);

/// Number of layers when gates are packed greedily; abstract blocks span
/// the whole register.
int circuit_depth(const Circuit& circuit);

/// Rebuilds a circuit from its own metadata (inverse of the builders).
Circuit circuit_from_metadata(const ordered_json& metadata);

}  // namespace peaked
