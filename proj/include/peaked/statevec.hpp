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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peaked/errors.hpp"

namespace peaked {

/// Hard cap on register width: a dense state above 24 qubits (256 MiB of
/// amplitudes) is outside this library's intended regime.
inline constexpr int kMaxQubits = 24;

using amp_t = std::complex<double>;

/// Dense state of an n-qubit register, 2^n complex amplitudes.
///
/// Basis convention, fixed library-wide: bit i of a basis index is the
/// state of qubit i, so qubit 0 is the least-significant bit. Rendered
/// bitstrings put qubit 0 in the rightmost character.
///
/// A StateVector is normalized (sum of |amplitude|^2 equal to 1 within
/// 1e-10) unless `is_projected` is set, which marks the unnormalized
/// result of zeroing a subspace. Projected vectors are accepted by the
/// overlap-style estimators but rejected by sampling.
class StateVector {
 public:
  /// Validating constructor. Throws CapacityError when n_qubits is outside
  /// [1, 24], ArgumentError when the amplitude count is not 2^n_qubits,
  /// and ContractError when a non-projected state is not normalized.
  StateVector(int n_qubits, std::vector<amp_t> amplitudes,
              bool is_projected = false);

  /// Fast path for internal use: skips the norm check (gate kernels are
  /// norm-preserving by construction).
  static StateVector unchecked(int n_qubits, std::vector<amp_t> amplitudes,
                               bool is_projected = false);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
  bool is_projected() const { return is_projected_; }

  const std::vector<amp_t>& amplitudes() const { return amps_; }
  amp_t amplitude(std::uint64_t z) const;

  /// Mutable amplitude access for kernels. Callers own the responsibility
  /// of leaving the state normalized (or flagging it projected).
  std::vector<amp_t>& amplitudes_mut() { return amps_; }
  void set_projected(bool projected) { is_projected_ = projected; }

  double norm_sq() const;

 private:
  StateVector() = default;

  int n_qubits_ = 0;
  bool is_projected_ = false;
  std::vector<amp_t> amps_;
};

enum class GateKind {
  kH,
  kX,
  kRy,
  kRz,
  kCnot,
  kCz,
  kPhaseOracle,
  kDiffusion,
};

/// One circuit element. Elementary gates carry qubit indices and (for
/// rotations) an angle. The two abstract blocks are PhaseOracle, which
/// flips the sign of every basis amplitude matching a registered
/// predicate, and Diffusion, the inversion about the mean (2|psi><psi| - 1
/// on the full register).
///
/// A PhaseOracle gate stores only the predicate id; the predicate itself
/// lives in the global OracleRegistry and is resolved at application time.
struct Gate {
  GateKind kind = GateKind::kH;
  int q0 = -1;
  int q1 = -1;
  double angle = 0.0;
  std::string predicate_id;

  static Gate h(int q);
  static Gate x(int q);
  static Gate ry(int q, double theta);
  static Gate rz(int q, double phi);
  static Gate cnot(int control, int target);
  static Gate cz(int a, int b);
  static Gate phase_oracle(std::string predicate_id);
  static Gate diffusion();

  bool is_single_qubit() const;
  bool is_two_qubit() const;
  bool is_abstract() const {
    return kind == GateKind::kPhaseOracle || kind == GateKind::kDiffusion;
  }

  std::string name() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Measurement record: counts per observed basis index.
struct ShotHistogram {
  int n_qubits = 0;
  std::uint64_t total_shots = 0;
  std::map<std::uint64_t, std::uint64_t> counts;

  /// Renders z with qubit 0 as the rightmost character.
  std::string bitstring(std::uint64_t z) const;
};

/// |0...0>.
StateVector zero_state(int n_qubits);

/// Applies one gate, out of place. Validates qubit indices against the
/// state and, for PhaseOracle, resolves the predicate id (LookupError when
/// unregistered, ArgumentError when the predicate was built for a
/// different register width).
StateVector apply_gate(const StateVector& state, const Gate& gate);

/// In-place variant used by the hot loops.
void apply_gate_inplace(StateVector& state, const Gate& gate);

/// State with i.i.d. complex-Gaussian amplitudes, normalized: a draw from
/// the unitarily invariant (Haar) distribution on the sphere. Identical
/// seeds give bitwise identical states on every platform.
StateVector haar_random_state(int n_qubits, std::uint64_t seed);

/// Draws `shots` basis indices from |amplitude|^2 (cumulative-weight
/// binary search, deterministic in the seed). Requires shots >= 1 and a
/// normalized, non-projected state; sampling from a projected vector is a
/// ContractError because the weights would not form a distribution.
ShotHistogram measure_sample(const StateVector& state, std::uint64_t shots,
                             std::uint64_t seed);

}  // namespace peaked
