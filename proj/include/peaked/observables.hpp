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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "peaked/errors.hpp"
#include "peaked/statevec.hpp"

namespace peaked {

using ordered_json = nlohmann::ordered_json;

/// Observable that is diagonal in the computational basis. Two flavors:
///
///  * Z-string: tensor product of Pauli Z on a support set of qubits,
///    identity elsewhere. value(z) = (-1)^(parity of z on the support).
///  * custom: an explicit real diagonal of length 2^n.
///
/// The oracle builders and the circuit exporter only accept Z-strings;
/// the estimators accept both.
class DiagonalObservable {
 public:
  /// Z-string on a support list (normalized to sorted order; duplicates
  /// rejected). An empty support is the identity observable.
  static DiagonalObservable zstring(int n_qubits,
                                    const std::vector<int>& support);

  /// Explicit real diagonal of length 2^n, n <= 16. No support is tracked,
  /// so estimator-level projector disjointness is the caller's
  /// responsibility for this flavor.
  static DiagonalObservable custom(int n_qubits, std::vector<double> diagonal);

  int n_qubits() const { return n_qubits_; }
  bool is_zstring() const { return diagonal_.empty(); }

  /// Support qubits (sorted). Empty for the identity Z-string and for
  /// custom diagonals, whose support is not tracked.
  const std::vector<int>& support() const { return support_; }
  std::uint64_t support_mask() const { return mask_; }

  double value(std::uint64_t z) const;

  /// Full diagonal as a vector of length 2^n (capped at n <= 16 to keep
  /// accidental blowups out of hot paths).
  std::vector<double> materialize() const;

  /// Text form, e.g. "Z@[0,2,4]". Z-strings only.
  std::string spec_string() const;

 private:
  DiagonalObservable() = default;

  int n_qubits_ = 0;
  std::vector<int> support_;
  std::uint64_t mask_ = 0;
  std::vector<double> diagonal_;
};

/// Projector onto the subspace where one qubit reads 0 ("up").
struct UpProjector {
  int qubit = 0;

  friend bool operator==(const UpProjector&, const UpProjector&) = default;
};

/// Marking predicate for phase oracles: a named boolean function on basis
/// indices, plus its exact marked count M. Kinds:
///
///  * sign_positive          z-string value is +1 (even support parity)
///  * sign_positive_and_up   additionally bit p of z is 0
///  * explicit_set           literal list of marked indices
///  * bit_conjunction        AND of (qubit == bit) constraints
class OraclePredicate {
 public:
  enum class Kind { kSignPositive, kSignPositiveAndUp, kExplicitSet, kBitConjunction };

  Kind kind() const { return kind_; }
  int n_qubits() const { return n_qubits_; }
  const std::string& id() const { return id_; }

  bool matches(std::uint64_t z) const;

  /// Exact number of marked indices.
  std::uint64_t marked_count() const { return marked_count_; }
  std::uint64_t space_size() const { return std::uint64_t{1} << n_qubits_; }

  const std::vector<std::uint64_t>& explicit_set() const { return set_; }
  const std::vector<std::pair<int, int>>& constraints() const {
    return constraints_;
  }
  const std::vector<int>& zstring_support() const { return support_; }
  int up_qubit() const { return up_qubit_; }

  ordered_json to_json() const;
  static OraclePredicate from_json(const ordered_json& j);

  static OraclePredicate explicit_set(int n_qubits,
                                      std::vector<std::uint64_t> marked);
  static OraclePredicate bit_conjunction(
      int n_qubits, std::vector<std::pair<int, int>> constraints);

 private:
  friend OraclePredicate heaviside_oracle(const DiagonalObservable&);
  friend OraclePredicate conjoined_oracle(const DiagonalObservable&,
                                          UpProjector);

  OraclePredicate() = default;

  Kind kind_ = Kind::kSignPositive;
  int n_qubits_ = 0;
  std::string id_;
  std::uint64_t marked_count_ = 0;
  std::uint64_t support_mask_ = 0;   // parity mask (sign kinds), constrained-qubit mask (conjunction)
  std::uint64_t ones_mask_ = 0;      // conjunction qubits required to read 1
  std::vector<int> support_;
  int up_qubit_ = -1;
  std::vector<std::uint64_t> set_;   // explicit_set, sorted
  std::vector<std::pair<int, int>> constraints_;  // bit_conjunction, sorted
};

/// Process-wide table mapping predicate ids to predicates. PhaseOracle
/// gates store only the id; application and lowering resolve it here.
class OracleRegistry {
 public:
  static OracleRegistry& global();

  /// Registers (idempotently) and returns the id.
  const std::string& add(const OraclePredicate& predicate);

  /// Throws LookupError when the id is unknown.
  const OraclePredicate& get(const std::string& id) const;

  bool contains(const std::string& id) const;

 private:
  std::map<std::string, OraclePredicate> table_;
};

/// Z-string constructor shorthand.
DiagonalObservable zstring(int n_qubits, const std::vector<int>& support);

/// a_z, the observable's diagonal entry at basis index z.
double diag_value(const DiagonalObservable& obs, std::uint64_t z);

/// Predicate marking {z : a_z > 0}. For a Z-string the support must be
/// nonempty (otherwise everything is marked and amplification is
/// degenerate) and exactly half the basis is marked, M = 2^(n-1). For a
/// custom diagonal the marked set is materialized explicitly with the
/// convention that a_z = 0 is unmarked; an all-marked or empty result is
/// rejected as degenerate.
OraclePredicate heaviside_oracle(const DiagonalObservable& obs);

/// Predicate marking {z : a_z > 0 and bit p of z = 0}. For a Z-string the
/// projector qubit must lie outside the observable support, and exactly a
/// quarter of the basis is marked, M = 2^(n-2).
OraclePredicate conjoined_oracle(const DiagonalObservable& obs,
                                 UpProjector projector);

/// Registers the predicate globally and returns a PhaseOracle gate
/// carrying its id.
Gate phase_oracle_gate(const OraclePredicate& predicate);

/// Parses "Z@[0,2,4]" (a Z-string support list, strictly increasing).
DiagonalObservable parse_observable(const std::string& text, int n_qubits);

/// Parses "P_up@5".
UpProjector parse_projector(const std::string& text, int n_qubits);

/// Renders an UpProjector as "P_up@5".
std::string projector_spec(UpProjector projector);

}  // namespace peaked
