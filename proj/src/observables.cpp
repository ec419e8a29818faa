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

#include "peaked/observables.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace peaked {

namespace {

constexpr int kMaterializeCap = 16;

void check_width_small(int n_qubits, int cap, const char* what) {
  if (n_qubits < 1 || n_qubits > cap) {
    throw CapacityError(std::string(what) + " requires n_qubits in [1, " +
                        std::to_string(cap) + "], got " +
                        std::to_string(n_qubits));
  }
}

std::string support_list(const std::vector<int>& support) {
  std::string s = "[";
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(support[i]);
  }
  return s + "]";
}

std::uint64_t fnv1a(const std::vector<std::uint64_t>& values) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::uint64_t v : values) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

std::string explicit_set_id(int n_qubits,
                            const std::vector<std::uint64_t>& marked) {
  std::string id = "set(n=" + std::to_string(n_qubits) + ")";
  if (marked.size() <= 16) {
    id += '[';
    for (std::size_t i = 0; i < marked.size(); ++i) {
      if (i) id += ',';
      id += std::to_string(marked[i]);
    }
    id += ']';
    return id;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "[k=%zu;h=%016llx]", marked.size(),
                static_cast<unsigned long long>(fnv1a(marked)));
  return id + buf;
}

}  // namespace

DiagonalObservable DiagonalObservable::zstring(int n_qubits,
                                               const std::vector<int>& support) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
  DiagonalObservable obs;
  obs.n_qubits_ = n_qubits;
  obs.support_ = support;
  std::sort(obs.support_.begin(), obs.support_.end());
  for (std::size_t i = 0; i < obs.support_.size(); ++i) {
    const int q = obs.support_[i];
    if (q < 0 || q >= n_qubits) {
      throw ArgumentError("support qubit " + std::to_string(q) +
                          " out of range for " + std::to_string(n_qubits) +
                          " qubits");
    }
    if (i > 0 && obs.support_[i - 1] == q) {
      throw ArgumentError("duplicate support qubit " + std::to_string(q));
    }
    obs.mask_ |= std::uint64_t{1} << q;
  }
  return obs;
}

DiagonalObservable DiagonalObservable::custom(int n_qubits,
                                              std::vector<double> diagonal) {
  check_width_small(n_qubits, kMaterializeCap, "custom diagonal");
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (diagonal.size() != dim) {
    throw ArgumentError("diagonal length " + std::to_string(diagonal.size()) +
                        " does not match 2^" + std::to_string(n_qubits));
  }
  DiagonalObservable obs;
  obs.n_qubits_ = n_qubits;
  obs.diagonal_ = std::move(diagonal);
  return obs;
}

double DiagonalObservable::value(std::uint64_t z) const {
  if (z >= (std::uint64_t{1} << n_qubits_)) {
    throw ArgumentError("basis index " + std::to_string(z) +
                        " out of range for " + std::to_string(n_qubits_) +
                        " qubits");
  }
  if (!diagonal_.empty()) return diagonal_[z];
  return (std::popcount(z & mask_) & 1) ? -1.0 : 1.0;
}

std::vector<double> DiagonalObservable::materialize() const {
  check_width_small(n_qubits_, kMaterializeCap, "materialize");
  if (!diagonal_.empty()) return diagonal_;
  const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
  std::vector<double> diag(dim);
  for (std::uint64_t z = 0; z < dim; ++z) {
    diag[z] = (std::popcount(z & mask_) & 1) ? -1.0 : 1.0;
  }
  return diag;
}

std::string DiagonalObservable::spec_string() const {
  if (!is_zstring()) {
    throw ArgumentError("custom diagonals have no Z@[...] spec form");
  }
  return "Z@" + support_list(support_);
}

bool OraclePredicate::matches(std::uint64_t z) const {
  switch (kind_) {
    case Kind::kSignPositive:
      return (std::popcount(z & support_mask_) & 1) == 0;
    case Kind::kSignPositiveAndUp:
      return (std::popcount(z & support_mask_) & 1) == 0 &&
             ((z >> up_qubit_) & 1) == 0;
    case Kind::kExplicitSet:
      return std::binary_search(set_.begin(), set_.end(), z);
    case Kind::kBitConjunction:
      return (z & support_mask_) == ones_mask_;
  }
  return false;
}

OraclePredicate OraclePredicate::explicit_set(
    int n_qubits, std::vector<std::uint64_t> marked) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
  std::sort(marked.begin(), marked.end());
  marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (!marked.empty() && marked.back() >= dim) {
    throw ArgumentError("marked index " + std::to_string(marked.back()) +
                        " out of range for " + std::to_string(n_qubits) +
                        " qubits");
  }
  OraclePredicate p;
  p.kind_ = Kind::kExplicitSet;
  p.n_qubits_ = n_qubits;
  p.marked_count_ = marked.size();
  p.set_ = std::move(marked);
  p.id_ = explicit_set_id(n_qubits, p.set_);
  return p;
}

OraclePredicate OraclePredicate::bit_conjunction(
    int n_qubits, std::vector<std::pair<int, int>> constraints) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
  std::sort(constraints.begin(), constraints.end());
  OraclePredicate p;
  p.kind_ = Kind::kBitConjunction;
  p.n_qubits_ = n_qubits;
  std::string id = "conj(n=" + std::to_string(n_qubits) + ")[";
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto [q, bit] = constraints[i];
    if (q < 0 || q >= n_qubits) {
      throw ArgumentError("constrained qubit " + std::to_string(q) +
                          " out of range for " + std::to_string(n_qubits) +
                          " qubits");
    }
    if (bit != 0 && bit != 1) {
      throw ArgumentError("constraint bit for qubit " + std::to_string(q) +
                          " must be 0 or 1, got " + std::to_string(bit));
    }
    if (i > 0 && constraints[i - 1].first == q) {
      throw ArgumentError("duplicate constraint on qubit " +
                          std::to_string(q));
    }
    p.support_mask_ |= std::uint64_t{1} << q;
    if (bit) p.ones_mask_ |= std::uint64_t{1} << q;
    if (i) id += ',';
    id += 'q' + std::to_string(q) + '=' + std::to_string(bit);
  }
  p.constraints_ = std::move(constraints);
  p.marked_count_ = std::uint64_t{1}
                    << (n_qubits - static_cast<int>(p.constraints_.size()));
  p.id_ = id + ']';
  return p;
}

ordered_json OraclePredicate::to_json() const {
  ordered_json j;
  switch (kind_) {
    case Kind::kSignPositive:
      j["kind"] = "sign_positive";
      j["n"] = n_qubits_;
      j["support"] = support_;
      break;
    case Kind::kSignPositiveAndUp:
      j["kind"] = "sign_positive_and_up";
      j["n"] = n_qubits_;
      j["support"] = support_;
      j["up"] = up_qubit_;
      break;
    case Kind::kExplicitSet:
      j["kind"] = "explicit_set";
      j["n"] = n_qubits_;
      j["marked"] = set_;
      break;
    case Kind::kBitConjunction: {
      j["kind"] = "bit_conjunction";
      j["n"] = n_qubits_;
      ordered_json cs = ordered_json::array();
      for (const auto& [q, bit] : constraints_) cs.push_back({q, bit});
      j["constraints"] = cs;
      break;
    }
  }
  return j;
}

OraclePredicate OraclePredicate::from_json(const ordered_json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int n = j.at("n").get<int>();
  if (kind == "sign_positive") {
    return heaviside_oracle(
        DiagonalObservable::zstring(n, j.at("support").get<std::vector<int>>()));
  }
  if (kind == "sign_positive_and_up") {
    return conjoined_oracle(
        DiagonalObservable::zstring(n, j.at("support").get<std::vector<int>>()),
        UpProjector{j.at("up").get<int>()});
  }
  if (kind == "explicit_set") {
    return explicit_set(n, j.at("marked").get<std::vector<std::uint64_t>>());
  }
  if (kind == "bit_conjunction") {
    std::vector<std::pair<int, int>> cs;
    for (const auto& c : j.at("constraints")) {
      cs.emplace_back(c.at(0).get<int>(), c.at(1).get<int>());
    }
    return bit_conjunction(n, cs);
  }
  throw ArgumentError("unknown predicate kind '" + kind + "'");
}

OracleRegistry& OracleRegistry::global() {
  static OracleRegistry registry;
  return registry;
}

const std::string& OracleRegistry::add(const OraclePredicate& predicate) {
  auto [it, inserted] = table_.emplace(predicate.id(), predicate);
  if (!inserted && it->second.to_json() != predicate.to_json()) {
    throw ArgumentError("predicate id collision: '" + predicate.id() + "'");
  }
  return it->first;
}

const OraclePredicate& OracleRegistry::get(const std::string& id) const {
  const auto it = table_.find(id);
  if (it == table_.end()) {
    throw LookupError("no registered oracle predicate with id '" + id + "'");
  }
  return it->second;
}

bool OracleRegistry::contains(const std::string& id) const {
  return table_.contains(id);
}

DiagonalObservable zstring(int n_qubits, const std::vector<int>& support) {
  return DiagonalObservable::zstring(n_qubits, support);
}

double diag_value(const DiagonalObservable& obs, std::uint64_t z) {
  return obs.value(z);
}

OraclePredicate heaviside_oracle(const DiagonalObservable& obs) {
  OraclePredicate p;
  p.n_qubits_ = obs.n_qubits();
  if (obs.is_zstring()) {
    if (obs.support().empty()) {
      throw DegenerateOracleError(
          "identity observable: every basis state has a_z = +1, so the "
          "sign-positive oracle would mark the whole space");
    }
    p.kind_ = OraclePredicate::Kind::kSignPositive;
    p.support_ = obs.support();
    p.support_mask_ = obs.support_mask();
    p.marked_count_ = std::uint64_t{1} << (obs.n_qubits() - 1);
    p.id_ = "sign_positive(n=" + std::to_string(obs.n_qubits()) + ";" +
            obs.spec_string() + ")";
    return p;
  }
  // Custom diagonal: materialize {z : a_z > 0} (a_z = 0 is unmarked).
  std::vector<std::uint64_t> marked;
  const std::uint64_t dim = std::uint64_t{1} << obs.n_qubits();
  for (std::uint64_t z = 0; z < dim; ++z) {
    if (obs.value(z) > 0.0) marked.push_back(z);
  }
  if (marked.empty() || marked.size() == dim) {
    throw DegenerateOracleError(
        "custom diagonal marks " + std::to_string(marked.size()) + " of " +
        std::to_string(dim) + " basis states; amplification is degenerate");
  }
  return OraclePredicate::explicit_set(obs.n_qubits(), std::move(marked));
}

OraclePredicate conjoined_oracle(const DiagonalObservable& obs,
                                 UpProjector projector) {
  const int n = obs.n_qubits();
  if (projector.qubit < 0 || projector.qubit >= n) {
    throw ArgumentError("projector qubit " + std::to_string(projector.qubit) +
                        " out of range for " + std::to_string(n) + " qubits");
  }
  if (obs.is_zstring()) {
    if (obs.support().empty()) {
      throw DegenerateOracleError(
          "identity observable: conjoining with the projector bit still "
          "marks half the space, which amplification cannot sharpen");
    }
    if (obs.support_mask() & (std::uint64_t{1} << projector.qubit)) {
      throw ArgumentError("projector qubit " +
                          std::to_string(projector.qubit) +
                          " overlaps the observable support");
    }
    OraclePredicate p;
    p.kind_ = OraclePredicate::Kind::kSignPositiveAndUp;
    p.n_qubits_ = n;
    p.support_ = obs.support();
    p.support_mask_ = obs.support_mask();
    p.up_qubit_ = projector.qubit;
    p.marked_count_ = std::uint64_t{1} << (n - 2);
    p.id_ = "sign_positive_and_up(n=" + std::to_string(n) + ";" +
            obs.spec_string() + ";up=" + std::to_string(projector.qubit) + ")";
    return p;
  }
  std::vector<std::uint64_t> marked;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t z = 0; z < dim; ++z) {
    if (obs.value(z) > 0.0 && ((z >> projector.qubit) & 1) == 0) {
      marked.push_back(z);
    }
  }
  if (marked.empty()) {
    throw DegenerateOracleError(
        "custom diagonal has no positive entries in the projected subspace");
  }
  return OraclePredicate::explicit_set(n, std::move(marked));
}

Gate phase_oracle_gate(const OraclePredicate& predicate) {
  return Gate::phase_oracle(OracleRegistry::global().add(predicate));
}

namespace {

// Parses a comma-separated integer list out of "[0,2,4]". Exact: no
// whitespace, no trailing comma.
std::vector<int> parse_index_list(const std::string& text,
                                  const std::string& context) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    throw ArgumentError(context + ": expected [i,j,...], got '" + text + "'");
  }
  std::vector<int> out;
  const std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string token =
        body.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (token.empty() || token.size() > 7 ||
        token.find_first_not_of("0123456789") != std::string::npos) {
      throw ArgumentError(context + ": bad index '" + token + "'");
    }
    out.push_back(std::stoi(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

DiagonalObservable parse_observable(const std::string& text, int n_qubits) {
  if (text.rfind("Z@", 0) != 0) {
    throw ArgumentError("observable spec must look like Z@[0,2,4], got '" +
                        text + "'");
  }
  const std::vector<int> support =
      parse_index_list(text.substr(2), "observable spec");
  for (std::size_t i = 1; i < support.size(); ++i) {
    if (support[i] <= support[i - 1]) {
      throw ArgumentError(
          "observable spec indices must be strictly increasing: '" + text +
          "'");
    }
  }
  return DiagonalObservable::zstring(n_qubits, support);
}

UpProjector parse_projector(const std::string& text, int n_qubits) {
  const std::string prefix = "P_up@";
  if (text.rfind(prefix, 0) != 0 || text.size() == prefix.size() ||
      text.size() > prefix.size() + 7 ||
      text.find_first_not_of("0123456789", prefix.size()) !=
          std::string::npos) {
    throw ArgumentError("projector spec must look like P_up@1, got '" + text +
                        "'");
  }
  const int q = std::stoi(text.substr(prefix.size()));
  if (q >= n_qubits) {
    throw ArgumentError("projector qubit " + std::to_string(q) +
                        " out of range for " + std::to_string(n_qubits) +
                        " qubits");
  }
  return UpProjector{q};
}

std::string projector_spec(UpProjector projector) {
  return "P_up@" + std::to_string(projector.qubit);
}

}  // namespace peaked
