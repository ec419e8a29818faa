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
#include <optional>
#include <string>
#include <vector>

#include "peaked/observables.hpp"
#include "peaked/statevec.hpp"

namespace peaked {

/// The five sums every estimator variant produces. `c_projected` is the
/// raw correlation signal (no normalization factor, the form plots and
/// comparisons use); `c_full` carries the 1/2^(n-1) and 1/2^n trace factors;
/// `denominator` is the absolute-weighted sum under e_a; `expectation` is
/// the plain diagonal expectation value over the whole register.
struct EstimatorValues {
  double c_projected = 0.0;
  double c_full = 0.0;
  double s_a = 0.0;
  double denominator = 0.0;
  double expectation = 0.0;
};

/// Exact reference values attached to a report whose top-level numbers are
/// shot-based or noise-averaged.
struct ExactReference {
  double c_ab_projected = 0.0;
  double c_ab_full = 0.0;
  double s_a = 0.0;
  std::optional<double> e_a;

  friend bool operator==(const ExactReference&,
                         const ExactReference&) = default;
};

/// One experiment's results. e_a is absent (JSON null, empty CSV cell)
/// when the projected subspace received no weight; it is never a NaN.
/// shots_used = 0 means the values come from exact amplitudes and
/// serializes as the string "exact".
struct EstimateReport {
  std::string method;  // haar | grover | shallow | custom
  int n_qubits = 0;
  std::optional<int> grover_t;
  std::uint64_t shots_used = 0;
  std::uint64_t seed = 0;
  double c_ab_projected = 0.0;
  double c_ab_full = 0.0;
  double s_a = 0.0;
  std::optional<double> e_a;
  std::optional<ExactReference> exact;
  ordered_json config_echo;

  ordered_json to_json() const;
  static EstimateReport from_json(const ordered_json& j);

  /// `method,n,T,shots,seed,c_ab_projected,c_ab_full,s_a,e_a`
  static const char* csv_header();
  std::string csv_row() const;

  friend bool operator==(const EstimateReport&,
                         const EstimateReport&) = default;
};

/// w_z = |amp_z|^2 when bit p of z is 0, else 0. Requires a normalized,
/// non-projected state (the weights are taken from the unprojected
/// distribution by definition).
std::vector<double> projected_weights(const StateVector& state,
                                      UpProjector proj);

/// Sum over z of w_z * a_z: the correlation signal without normalization
/// factors. For Z-strings the projector qubit must lie outside the
/// observable support.
double itcf_projected(const StateVector& state, const DiagonalObservable& obs,
                      UpProjector proj);

/// (1/2^(n-1)) * itcf_projected - (1/2^n) * <r|A|r>, the full-trace
/// normalized estimator including the term the projected convention drops.
double itcf_full(const StateVector& state, const DiagonalObservable& obs,
                 UpProjector proj);

/// (1/2^n) * sum_z a_z * b_z with b_z = +1 when bit p of z is 0, else -1:
/// the exhaustive ground-truth trace the estimators approximate. Capped at
/// n <= 16.
double exact_trace_itcf(const DiagonalObservable& obs, UpProjector proj,
                        int n_qubits);

/// Projected weight on {z : a_z != 0}; equals the total projected weight
/// for Z-strings.
double support_overlap(const StateVector& state, const DiagonalObservable& obs,
                       UpProjector proj);

/// (sum a_z w_z) / (sum |a_z| w_z). Throws UndefinedRatioError when the
/// denominator vanishes (no weight in the projected subspace).
double biased_ratio(const StateVector& state, const DiagonalObservable& obs,
                    UpProjector proj);

/// <r|A|r> = sum_z |amp_z|^2 a_z over the whole register.
double diag_expectation(const StateVector& state,
                        const DiagonalObservable& obs);

/// All estimator sums from exact amplitudes in one pass.
EstimatorValues exact_values(const StateVector& state,
                             const DiagonalObservable& obs, UpProjector proj);

/// All estimator sums with |amp_z|^2 replaced by empirical frequencies.
EstimatorValues values_from_histogram(const ShotHistogram& hist,
                                      const DiagonalObservable& obs,
                                      UpProjector proj);

/// Field-wise mean in index order (reproducible reduction). Requires at
/// least one sample.
EstimatorValues mean_values(const std::vector<EstimatorValues>& samples);

/// Report skeleton from one EstimatorValues: fills the four metrics and
/// constructs e_a as c/denominator so the ratio identity holds exactly.
EstimateReport report_from_values(const EstimatorValues& values);

/// Empirical estimates from a measurement histogram. e_a is absent when
/// no counts landed in the projected subspace.
EstimateReport shot_estimates(const ShotHistogram& hist,
                              const DiagonalObservable& obs, UpProjector proj);

/// Zeroes every amplitude with bit p = 1. The result carries the
/// is_projected flag and is rejected by sampling.
StateVector project_up(const StateVector& state, UpProjector proj);

/// Monte-Carlo average over independent Haar states with per-sample
/// derived seeds.
struct HaarAverage {
  EstimateReport report;
  std::vector<EstimatorValues> samples;
  double variance_c_projected = 0.0;  // unbiased sample variance, 0 when M=1
  double variance_expectation = 0.0;
};

HaarAverage haar_average_itcf(int n_qubits, const DiagonalObservable& obs,
                              UpProjector proj, int num_states,
                              std::uint64_t seed);

}  // namespace peaked
