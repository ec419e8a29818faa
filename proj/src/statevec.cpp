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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "peaked/observables.hpp"
#include "peaked/rng.hpp"

namespace peaked {

namespace {

constexpr double kNormTolerance = 1e-10;

void check_width(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
}

void check_qubit(const StateVector& state, int q, const char* what) {
  if (q < 0 || q >= state.n_qubits()) {
    throw ArgumentError(std::string(what) + " qubit " + std::to_string(q) +
                        " out of range for " +
                        std::to_string(state.n_qubits()) + " qubits");
  }
}

}  // namespace

StateVector::StateVector(int n_qubits, std::vector<amp_t> amplitudes,
                         bool is_projected) {
  check_width(n_qubits);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (amplitudes.size() != dim) {
    throw ArgumentError("amplitude count " +
                        std::to_string(amplitudes.size()) +
                        " does not match 2^" + std::to_string(n_qubits));
  }
  n_qubits_ = n_qubits;
  is_projected_ = is_projected;
  amps_ = std::move(amplitudes);
  if (!is_projected_) {
    const double n2 = norm_sq();
    if (std::abs(n2 - 1.0) > kNormTolerance) {
      throw ContractError("state is not normalized: |psi|^2 = " +
                          std::to_string(n2));
    }
  }
}

StateVector StateVector::unchecked(int n_qubits, std::vector<amp_t> amplitudes,
                                   bool is_projected) {
  check_width(n_qubits);
  StateVector s;
  s.n_qubits_ = n_qubits;
  s.is_projected_ = is_projected;
  s.amps_ = std::move(amplitudes);
  return s;
}

amp_t StateVector::amplitude(std::uint64_t z) const {
  if (z >= dim()) {
    throw ArgumentError("basis index " + std::to_string(z) +
                        " out of range for " + std::to_string(n_qubits_) +
                        " qubits");
  }
  return amps_[z];
}

double StateVector::norm_sq() const {
  double total = 0.0;
  for (const amp_t& a : amps_) total += std::norm(a);
  return total;
}

Gate Gate::h(int q) { return Gate{GateKind::kH, q, -1, 0.0, {}}; }
Gate Gate::x(int q) { return Gate{GateKind::kX, q, -1, 0.0, {}}; }
Gate Gate::ry(int q, double theta) {
  return Gate{GateKind::kRy, q, -1, theta, {}};
}
Gate Gate::rz(int q, double phi) { return Gate{GateKind::kRz, q, -1, phi, {}}; }
Gate Gate::cnot(int control, int target) {
  return Gate{GateKind::kCnot, control, target, 0.0, {}};
}
Gate Gate::cz(int a, int b) { return Gate{GateKind::kCz, a, b, 0.0, {}}; }
Gate Gate::phase_oracle(std::string predicate_id) {
  return Gate{GateKind::kPhaseOracle, -1, -1, 0.0, std::move(predicate_id)};
}
Gate Gate::diffusion() { return Gate{GateKind::kDiffusion, -1, -1, 0.0, {}}; }

bool Gate::is_single_qubit() const {
  return kind == GateKind::kH || kind == GateKind::kX ||
         kind == GateKind::kRy || kind == GateKind::kRz;
}

bool Gate::is_two_qubit() const {
  return kind == GateKind::kCnot || kind == GateKind::kCz;
}

std::string Gate::name() const {
  switch (kind) {
    case GateKind::kH: return "h";
    case GateKind::kX: return "x";
    case GateKind::kRy: return "ry";
    case GateKind::kRz: return "rz";
    case GateKind::kCnot: return "cx";
    case GateKind::kCz: return "cz";
    case GateKind::kPhaseOracle: return "oracle";
    case GateKind::kDiffusion: return "diffusion";
  }
  return "?";
}

std::string ShotHistogram::bitstring(std::uint64_t z) const {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if ((z >> q) & 1) s[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
  }
  return s;
}

StateVector zero_state(int n_qubits) {
  check_width(n_qubits);
  std::vector<amp_t> amps(std::uint64_t{1} << n_qubits, amp_t{0.0, 0.0});
  amps[0] = amp_t{1.0, 0.0};
  return StateVector::unchecked(n_qubits, std::move(amps));
}

namespace {

// Visits every amplitude pair (i0, i0 | 1<<q) once.
template <typename F>
void for_each_pair(std::vector<amp_t>& a, int q, F&& body) {
  const std::uint64_t half = a.size() >> 1;
  const std::uint64_t low_mask = (std::uint64_t{1} << q) - 1;
  const std::uint64_t bit = std::uint64_t{1} << q;
  for (std::uint64_t i = 0; i < half; ++i) {
    const std::uint64_t i0 = ((i & ~low_mask) << 1) | (i & low_mask);
    body(a[i0], a[i0 | bit]);
  }
}

void apply_phase_oracle(StateVector& state, const Gate& gate) {
  const OraclePredicate& pred = OracleRegistry::global().get(gate.predicate_id);
  if (pred.n_qubits() != state.n_qubits()) {
    throw ArgumentError("predicate '" + gate.predicate_id + "' is for " +
                        std::to_string(pred.n_qubits()) +
                        " qubits, state has " +
                        std::to_string(state.n_qubits()));
  }
  std::vector<amp_t>& a = state.amplitudes_mut();
  for (std::uint64_t z = 0; z < a.size(); ++z) {
    if (pred.matches(z)) a[z] = -a[z];
  }
}

void apply_diffusion(StateVector& state) {
  std::vector<amp_t>& a = state.amplitudes_mut();
  amp_t mean{0.0, 0.0};
  for (const amp_t& v : a) mean += v;
  mean /= static_cast<double>(a.size());
  const amp_t twice = 2.0 * mean;
  for (amp_t& v : a) v = twice - v;
}

}  // namespace

void apply_gate_inplace(StateVector& state, const Gate& gate) {
  std::vector<amp_t>& a = state.amplitudes_mut();
  switch (gate.kind) {
    case GateKind::kH: {
      check_qubit(state, gate.q0, "target");
      const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
      for_each_pair(a, gate.q0, [&](amp_t& a0, amp_t& a1) {
        const amp_t t0 = (a0 + a1) * inv_sqrt2;
        const amp_t t1 = (a0 - a1) * inv_sqrt2;
        a0 = t0;
        a1 = t1;
      });
      break;
    }
    case GateKind::kX: {
      check_qubit(state, gate.q0, "target");
      for_each_pair(a, gate.q0, [](amp_t& a0, amp_t& a1) { std::swap(a0, a1); });
      break;
    }
    case GateKind::kRy: {
      check_qubit(state, gate.q0, "target");
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      for_each_pair(a, gate.q0, [&](amp_t& a0, amp_t& a1) {
        const amp_t t0 = c * a0 - s * a1;
        const amp_t t1 = s * a0 + c * a1;
        a0 = t0;
        a1 = t1;
      });
      break;
    }
    case GateKind::kRz: {
      check_qubit(state, gate.q0, "target");
      const amp_t e0 = std::polar(1.0, -gate.angle / 2.0);
      const amp_t e1 = std::polar(1.0, gate.angle / 2.0);
      for_each_pair(a, gate.q0, [&](amp_t& a0, amp_t& a1) {
        a0 *= e0;
        a1 *= e1;
      });
      break;
    }
    case GateKind::kCnot: {
      check_qubit(state, gate.q0, "control");
      check_qubit(state, gate.q1, "target");
      if (gate.q0 == gate.q1) {
        throw ArgumentError("cnot control and target coincide: qubit " +
                            std::to_string(gate.q0));
      }
      const std::uint64_t cbit = std::uint64_t{1} << gate.q0;
      const std::uint64_t tbit = std::uint64_t{1} << gate.q1;
      for (std::uint64_t z = 0; z < a.size(); ++z) {
        if ((z & cbit) && !(z & tbit)) std::swap(a[z], a[z | tbit]);
      }
      break;
    }
    case GateKind::kCz: {
      check_qubit(state, gate.q0, "first");
      check_qubit(state, gate.q1, "second");
      if (gate.q0 == gate.q1) {
        throw ArgumentError("cz qubits coincide: qubit " +
                            std::to_string(gate.q0));
      }
      const std::uint64_t both =
          (std::uint64_t{1} << gate.q0) | (std::uint64_t{1} << gate.q1);
      for (std::uint64_t z = 0; z < a.size(); ++z) {
        if ((z & both) == both) a[z] = -a[z];
      }
      break;
    }
    case GateKind::kPhaseOracle:
      apply_phase_oracle(state, gate);
      break;
    case GateKind::kDiffusion:
      apply_diffusion(state);
      break;
  }
}

StateVector apply_gate(const StateVector& state, const Gate& gate) {
  StateVector out = state;
  apply_gate_inplace(out, gate);
  return out;
}

StateVector haar_random_state(int n_qubits, std::uint64_t seed) {
  check_width(n_qubits);
  Rng rng(seed);
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  std::vector<amp_t> amps(dim);
  double total = 0.0;
  for (std::uint64_t z = 0; z < dim; ++z) {
    // Box-Muller: one complex standard Gaussian per pair of uniforms.
    const double u1 = 1.0 - rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    amps[z] = std::polar(r, 2.0 * std::numbers::pi * u2);
    total += std::norm(amps[z]);
  }
  const double scale = 1.0 / std::sqrt(total);
  for (amp_t& v : amps) v *= scale;
  return StateVector::unchecked(n_qubits, std::move(amps));
}

ShotHistogram measure_sample(const StateVector& state, std::uint64_t shots,
                             std::uint64_t seed) {
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  if (state.is_projected()) {
    throw ContractError(
        "cannot sample a projected (unnormalized) state; the weights do not "
        "form a distribution");
  }
  const double n2 = state.norm_sq();
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw ContractError("cannot sample an unnormalized state: |psi|^2 = " +
                        std::to_string(n2));
  }

  const std::vector<amp_t>& a = state.amplitudes();
  std::vector<double> cumulative(a.size());
  double running = 0.0;
  for (std::uint64_t z = 0; z < a.size(); ++z) {
    running += std::norm(a[z]);
    cumulative[z] = running;
  }

  Rng rng(seed);
  ShotHistogram hist;
  hist.n_qubits = state.n_qubits();
  hist.total_shots = shots;
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * running;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const std::uint64_t z = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(a.size()) - 1));
    ++hist.counts[z];
  }
  return hist;
}

}  // namespace peaked
