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

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "peaked/detail/format.hpp"

namespace peaked {

namespace {

using detail::fmt_double;

constexpr double kPi = std::numbers::pi;

void check_index(int q, int n, const char* what) {
  if (q < 0 || q >= n) {
    throw ArgumentError(std::string(what) + " qubit " + std::to_string(q) +
                        " out of range for " + std::to_string(n) + " qubits");
  }
}

}  // namespace

ordered_json ShallowSpec::to_json() const {
  ordered_json j;
  j["hadamard"] = hadamard_set;
  ordered_json rots = ordered_json::array();
  for (const ShallowRotation& r : rotations) {
    rots.push_back({{"qubit", r.qubit},
                    {"axis", std::string(1, r.axis)},
                    {"angle", r.angle}});
  }
  j["rotations"] = rots;
  ordered_json ps = ordered_json::array();
  for (const EntanglingPair& p : pairs) {
    ps.push_back({{"kind", p.is_cz ? "cz" : "cnot"},
                  {"control", p.control},
                  {"target", p.target}});
  }
  j["pairs"] = ps;
  ordered_json fs = ordered_json::array();
  for (const FinalPhase& f : final_phases) {
    fs.push_back({{"qubit", f.qubit}, {"angle", f.angle}});
  }
  j["phases"] = fs;
  return j;
}

ShallowSpec ShallowSpec::from_json(const ordered_json& j) {
  if (!j.is_object()) {
    throw ArgumentError("shallow spec must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "hadamard" && key != "rotations" && key != "pairs" &&
        key != "phases") {
      throw ArgumentError("shallow spec: unknown field '" + key + "'");
    }
  }
  ShallowSpec spec;
  if (j.contains("hadamard")) {
    spec.hadamard_set = j.at("hadamard").get<std::vector<int>>();
  }
  if (j.contains("rotations")) {
    for (const auto& r : j.at("rotations")) {
      const std::string axis = r.at("axis").get<std::string>();
      if (axis != "y" && axis != "z") {
        throw ArgumentError("shallow spec: rotation axis must be 'y' or 'z', "
                            "got '" + axis + "'");
      }
      spec.rotations.push_back(ShallowRotation{r.at("qubit").get<int>(),
                                               axis[0],
                                               r.at("angle").get<double>()});
    }
  }
  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      const std::string kind = p.at("kind").get<std::string>();
      if (kind != "cnot" && kind != "cz") {
        throw ArgumentError("shallow spec: pair kind must be 'cnot' or 'cz', "
                            "got '" + kind + "'");
      }
      spec.pairs.push_back(EntanglingPair{p.at("control").get<int>(),
                                          p.at("target").get<int>(),
                                          kind == "cz"});
    }
  }
  if (j.contains("phases")) {
    for (const auto& f : j.at("phases")) {
      spec.final_phases.push_back(
          FinalPhase{f.at("qubit").get<int>(), f.at("angle").get<double>()});
    }
  }
  return spec;
}

Circuit build_grover(int n_qubits, const OraclePredicate& predicate, int t) {
  if (t < 0 || t > kMaxGroverIterations) {
    throw ArgumentError("iteration count must be in [0, " +
                        std::to_string(kMaxGroverIterations) + "], got " +
                        std::to_string(t));
  }
  if (predicate.n_qubits() != n_qubits) {
    throw ArgumentError("predicate '" + predicate.id() + "' is for " +
                        std::to_string(predicate.n_qubits()) +
                        " qubits, circuit has " + std::to_string(n_qubits));
  }
  const std::uint64_t m = predicate.marked_count();
  if (m == 0) {
    throw DegenerateOracleError("oracle '" + predicate.id() +
                                "' marks no basis states");
  }
  if (m == predicate.space_size()) {
    throw DegenerateOracleError("oracle '" + predicate.id() +
                                "' marks every basis state");
  }
  const std::string& id = OracleRegistry::global().add(predicate);

  Circuit c;
  c.n_qubits = n_qubits;
  for (int q = 0; q < n_qubits; ++q) c.gates.push_back(Gate::h(q));
  for (int i = 0; i < t; ++i) {
    c.gates.push_back(Gate::phase_oracle(id));
    c.gates.push_back(Gate::diffusion());
  }
  c.metadata["builder"] = "grover";
  c.metadata["n"] = n_qubits;
  c.metadata["T"] = t;
  c.metadata["predicate"] = predicate.to_json();
  c.metadata["predicate_id"] = id;
  return c;
}

double grover_success_probability(std::uint64_t marked, std::uint64_t total,
                                  int t) {
  if (marked < 1 || marked >= total) {
    throw ArgumentError("marked count must satisfy 1 <= M < N, got M=" +
                        std::to_string(marked) + ", N=" +
                        std::to_string(total));
  }
  if (t < 0) throw ArgumentError("iteration count must be >= 0");
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) /
                                           static_cast<double>(total)));
  const double s = std::sin(static_cast<double>(2 * t + 1) * theta);
  return s * s;
}

int optimal_iterations(std::uint64_t marked, std::uint64_t total) {
  if (marked < 1 || marked >= total) {
    throw ArgumentError("marked count must satisfy 1 <= M < N, got M=" +
                        std::to_string(marked) + ", N=" +
                        std::to_string(total));
  }
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) /
                                           static_cast<double>(total)));
  const double t_star = kPi / (4.0 * theta) - 0.5;
  const int t0 = std::max(0, static_cast<int>(std::floor(t_star)));
  const int t1 = t0 + 1;
  const double p0 = grover_success_probability(marked, total, t0);
  const double p1 = grover_success_probability(marked, total, t1);
  return p1 > p0 ? t1 : t0;
}

Circuit build_shallow(int n_qubits, const ShallowSpec& spec) {
  Circuit c;
  c.n_qubits = n_qubits;
  for (std::size_t i = 0; i < spec.hadamard_set.size(); ++i) {
    const int q = spec.hadamard_set[i];
    check_index(q, n_qubits, "hadamard");
    if (i > 0 && spec.hadamard_set[i - 1] >= q) {
      throw ArgumentError("hadamard set must be strictly increasing");
    }
    c.gates.push_back(Gate::h(q));
  }
  for (const ShallowRotation& r : spec.rotations) {
    check_index(r.qubit, n_qubits, "rotation");
    if (r.axis != 'y' && r.axis != 'z') {
      throw ArgumentError("rotation axis must be 'y' or 'z'");
    }
    c.gates.push_back(r.axis == 'y' ? Gate::ry(r.qubit, r.angle)
                                    : Gate::rz(r.qubit, r.angle));
  }
  for (const EntanglingPair& p : spec.pairs) {
    check_index(p.control, n_qubits, "entangling");
    check_index(p.target, n_qubits, "entangling");
    if (p.control == p.target) {
      throw ArgumentError("entangling pair endpoints coincide: qubit " +
                          std::to_string(p.control));
    }
    c.gates.push_back(p.is_cz ? Gate::cz(p.control, p.target)
                              : Gate::cnot(p.control, p.target));
  }
  for (const FinalPhase& f : spec.final_phases) {
    check_index(f.qubit, n_qubits, "phase");
    c.gates.push_back(Gate::rz(f.qubit, f.angle));
  }
  c.metadata["builder"] = "shallow";
  c.metadata["n"] = n_qubits;
  c.metadata["spec"] = spec.to_json();
  return c;
}

double marked_probability(const StateVector& state,
                          const OraclePredicate& predicate) {
  if (predicate.n_qubits() != state.n_qubits()) {
    throw ArgumentError("predicate '" + predicate.id() + "' is for " +
                        std::to_string(predicate.n_qubits()) +
                        " qubits, state has " +
                        std::to_string(state.n_qubits()));
  }
  const std::vector<amp_t>& a = state.amplitudes();
  double total = 0.0;
  if (predicate.kind() == OraclePredicate::Kind::kExplicitSet) {
    for (std::uint64_t z : predicate.explicit_set()) total += std::norm(a[z]);
    return total;
  }
  for (std::uint64_t z = 0; z < a.size(); ++z) {
    if (predicate.matches(z)) total += std::norm(a[z]);
  }
  return total;
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
  if (circuit.n_qubits != state.n_qubits()) {
    throw ArgumentError("circuit is for " + std::to_string(circuit.n_qubits) +
                        " qubits, state has " +
                        std::to_string(state.n_qubits()));
  }
  StateVector out = state;
  for (const Gate& g : circuit.gates) apply_gate_inplace(out, g);
  return out;
}

namespace {

// Ancilla-free multi-controlled Z on the listed qubits (phase -1 exactly
// when all of them read 1), up to a constant global phase for k >= 3.
//
// The phase pi*[all ones] decomposes over subset parities: each nonempty
// subset S of the k qubits contributes a parity-conditioned rotation of
// magnitude pi/2^(k-1), sign +1 for odd |S| and -1 for even |S|. Subsets
// sharing a maximal qubit are walked in Gray-code order so consecutive
// terms differ by one CNOT into the shared target.
void emit_mcz(std::vector<Gate>& out, const std::vector<int>& qs) {
  const int k = static_cast<int>(qs.size());
  if (k == 0) {
    // Empty control set: the "oracle" is -1 on everything. rz(2*pi) is
    // exactly -1 on both basis states.
    out.push_back(Gate::rz(0, 2.0 * kPi));
    return;
  }
  if (k == 1) {
    out.push_back(Gate::rz(qs[0], kPi));
    return;
  }
  if (k == 2) {
    out.push_back(Gate::cz(qs[0], qs[1]));
    return;
  }
  const double unit = kPi / static_cast<double>(std::uint64_t{1} << (k - 1));
  for (int m = 1; m <= k; ++m) {
    const int target = qs[m - 1];
    const int num_controls = m - 1;
    out.push_back(Gate::rz(target, unit));
    std::uint32_t prev = 0;
    const std::uint32_t combos = std::uint32_t{1} << num_controls;
    for (std::uint32_t i = 1; i < combos; ++i) {
      const std::uint32_t gray = i ^ (i >> 1);
      const int changed = std::countr_zero(gray ^ prev);
      out.push_back(Gate::cnot(qs[changed], target));
      const int subset_size = std::popcount(gray) + 1;
      out.push_back(Gate::rz(target, (subset_size & 1) ? unit : -unit));
      prev = gray;
    }
    for (int c = 0; c < num_controls; ++c) {
      if ((prev >> c) & 1) out.push_back(Gate::cnot(qs[c], target));
    }
  }
}

void lower_oracle(std::vector<Gate>& out, const OraclePredicate& p, int n) {
  switch (p.kind()) {
    case OraclePredicate::Kind::kSignPositive: {
      // Z on every support qubit gives phase (-1)^parity; conjugating by
      // X on one support qubit flips that to -1 exactly on even parity.
      const int pivot = p.zstring_support().front();
      out.push_back(Gate::x(pivot));
      for (int q : p.zstring_support()) out.push_back(Gate::rz(q, kPi));
      out.push_back(Gate::x(pivot));
      break;
    }
    case OraclePredicate::Kind::kSignPositiveAndUp: {
      // Fold the support parity into one qubit with a CNOT chain, phase
      // on (parity even AND up-bit 0) via an X-conjugated CZ, uncompute.
      const std::vector<int>& support = p.zstring_support();
      const int acc = support.front();
      const int up = p.up_qubit();
      for (std::size_t i = 1; i < support.size(); ++i) {
        out.push_back(Gate::cnot(support[i], acc));
      }
      out.push_back(Gate::x(acc));
      out.push_back(Gate::x(up));
      out.push_back(Gate::cz(acc, up));
      out.push_back(Gate::x(up));
      out.push_back(Gate::x(acc));
      for (std::size_t i = support.size(); i-- > 1;) {
        out.push_back(Gate::cnot(support[i], acc));
      }
      break;
    }
    case OraclePredicate::Kind::kExplicitSet: {
      if (p.explicit_set().size() != 1) {
        throw UnsupportedOracleError(
            "oracle '" + p.id() +
            "' has no gate lowering: explicit sets larger than one element "
            "carry no bit-constraint structure");
      }
      const std::uint64_t target = p.explicit_set().front();
      for (int q = 0; q < n; ++q) {
        if (!((target >> q) & 1)) out.push_back(Gate::x(q));
      }
      std::vector<int> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), 0);
      emit_mcz(out, all);
      for (int q = 0; q < n; ++q) {
        if (!((target >> q) & 1)) out.push_back(Gate::x(q));
      }
      break;
    }
    case OraclePredicate::Kind::kBitConjunction: {
      std::vector<int> qubits;
      for (const auto& [q, bit] : p.constraints()) {
        if (!bit) out.push_back(Gate::x(q));
        qubits.push_back(q);
      }
      emit_mcz(out, qubits);
      for (const auto& [q, bit] : p.constraints()) {
        if (!bit) out.push_back(Gate::x(q));
      }
      break;
    }
  }
}

void lower_diffusion(std::vector<Gate>& out, int n) {
  // 2|s><s| - 1 = H^n (2|0><0| - 1) H^n; the inner reflection is an
  // X-conjugated multi-controlled Z, up to a global -1.
  for (int q = 0; q < n; ++q) out.push_back(Gate::h(q));
  for (int q = 0; q < n; ++q) out.push_back(Gate::x(q));
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  emit_mcz(out, all);
  for (int q = 0; q < n; ++q) out.push_back(Gate::x(q));
  for (int q = 0; q < n; ++q) out.push_back(Gate::h(q));
}

}  // namespace

Circuit lower_circuit(const Circuit& circuit) {
  Circuit lowered;
  lowered.n_qubits = circuit.n_qubits;
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::kPhaseOracle: {
        const OraclePredicate& p =
            OracleRegistry::global().get(g.predicate_id);
        if (p.n_qubits() != circuit.n_qubits) {
          throw ArgumentError("predicate '" + g.predicate_id + "' is for " +
                              std::to_string(p.n_qubits()) +
                              " qubits, circuit has " +
                              std::to_string(circuit.n_qubits));
        }
        lower_oracle(lowered.gates, p, circuit.n_qubits);
        break;
      }
      case GateKind::kDiffusion:
        lower_diffusion(lowered.gates, circuit.n_qubits);
        break;
      default:
        lowered.gates.push_back(g);
    }
  }
  lowered.metadata["builder"] = "lowered";
  lowered.metadata["n"] = circuit.n_qubits;
  lowered.metadata["source"] = circuit.metadata;
  return lowered;
}

std::string export_qasm(const Circuit& circuit) {
  const Circuit lowered = lower_circuit(circuit);
  std::string text;
  text += "OPENQASM 2.0;\n";
  text += "include \"qelib1.inc\";\n";
  text += "qreg q[" + std::to_string(circuit.n_qubits) + "];\n";
  for (const Gate& g : lowered.gates) {
    switch (g.kind) {
      case GateKind::kH:
        text += "h q[" + std::to_string(g.q0) + "];\n";
        break;
      case GateKind::kX:
        text += "x q[" + std::to_string(g.q0) + "];\n";
        break;
      case GateKind::kRy:
        text += "ry(" + fmt_double(g.angle) + ") q[" + std::to_string(g.q0) +
                "];\n";
        break;
      case GateKind::kRz:
        text += "rz(" + fmt_double(g.angle) + ") q[" + std::to_string(g.q0) +
                "];\n";
        break;
      case GateKind::kCnot:
        text += "cx q[" + std::to_string(g.q0) + "],q[" +
                std::to_string(g.q1) + "];\n";
        break;
      case GateKind::kCz:
        text += "cz q[" + std::to_string(g.q0) + "],q[" +
                std::to_string(g.q1) + "];\n";
        break;
      default:
        throw Error("lowered circuit contains an abstract gate");
    }
  }
  return text;
}

int circuit_depth(const Circuit& circuit) {
  std::vector<int> layer(static_cast<std::size_t>(circuit.n_qubits), 0);
  int depth = 0;
  for (const Gate& g : circuit.gates) {
    if (g.is_abstract()) {
      const int l = *std::max_element(layer.begin(), layer.end()) + 1;
      std::fill(layer.begin(), layer.end(), l);
      depth = std::max(depth, l);
    } else if (g.is_two_qubit()) {
      const int l = std::max(layer[g.q0], layer[g.q1]) + 1;
      layer[g.q0] = layer[g.q1] = l;
      depth = std::max(depth, l);
    } else {
      const int l = ++layer[g.q0];
      depth = std::max(depth, l);
    }
  }
  return depth;
}

Circuit circuit_from_metadata(const ordered_json& metadata) {
  const std::string builder = metadata.at("builder").get<std::string>();
  if (builder == "grover") {
    return build_grover(metadata.at("n").get<int>(),
                        OraclePredicate::from_json(metadata.at("predicate")),
                        metadata.at("T").get<int>());
  }
  if (builder == "shallow") {
    return build_shallow(metadata.at("n").get<int>(),
                         ShallowSpec::from_json(metadata.at("spec")));
  }
  throw ArgumentError("cannot rebuild circuit from builder '" + builder + "'");
}

}  // namespace peaked
