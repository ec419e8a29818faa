# Copyright 2026 The peaked-itcf developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Peaked-circuit estimators for infinite-temperature correlation functions.

Harness-level entry points (``run_experiment``, ``sweep_grover_t``,
``compare_methods``, ``sample_experiment``) take and return plain dicts
mirroring the JSON file formats of the ``peaked`` command line tool; the
lower-level simulator types cross as opaque handles.
"""

from ._core import (
    Circuit,
    DiagonalObservable,
    EstimatorValues,
    NoiseParams,
    OraclePredicate,
    ShotHistogram,
    StateVector,
    UpProjector,
    apply_circuit,
    apply_noisy_circuit,
    biased_ratio,
    build_grover,
    build_shallow,
    compare_methods,
    conjoined_oracle,
    derive_seed,
    exact_trace_itcf,
    exact_values,
    experiment_qasm,
    export_qasm,
    grover_success_probability,
    haar_average_itcf,
    haar_random_state,
    heaviside_oracle,
    itcf_full,
    itcf_projected,
    lower_circuit,
    marked_probability,
    measure_sample,
    optimal_iterations,
    parse_observable,
    parse_projector,
    run_experiment,
    sample_experiment,
    shot_estimates,
    support_overlap,
    sweep_grover_t,
    zero_state,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "DiagonalObservable",
    "EstimatorValues",
    "NoiseParams",
    "OraclePredicate",
    "ShotHistogram",
    "StateVector",
    "UpProjector",
    "apply_circuit",
    "apply_noisy_circuit",
    "biased_ratio",
    "build_grover",
    "build_shallow",
    "compare_methods",
    "conjoined_oracle",
    "derive_seed",
    "exact_trace_itcf",
    "exact_values",
    "experiment_qasm",
    "export_qasm",
    "grover_success_probability",
    "haar_average_itcf",
    "haar_random_state",
    "heaviside_oracle",
    "itcf_full",
    "itcf_projected",
    "lower_circuit",
    "marked_probability",
    "measure_sample",
    "optimal_iterations",
    "parse_observable",
    "parse_projector",
    "run_experiment",
    "sample_experiment",
    "shot_estimates",
    "support_overlap",
    "sweep_grover_t",
    "zero_state",
]
