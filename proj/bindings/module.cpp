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

// Python module over the C++ core. Harness-level calls take and return
// plain dicts (bridged through the JSON forms, which are the stable
// interface); the statevector, observable, and circuit types cross as
// opaque handles so chained calls stay in C++.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "peaked/circuits.hpp"
#include "peaked/errors.hpp"
#include "peaked/estimators.hpp"
#include "peaked/harness.hpp"
#include "peaked/noise.hpp"
#include "peaked/observables.hpp"
#include "peaked/rng.hpp"
#include "peaked/statevec.hpp"

namespace py = pybind11;

namespace {

using namespace peaked;

ordered_json json_from_py(const py::handle& obj) {
  const py::object dumped = py::module_::import("json").attr("dumps")(obj);
  return ordered_json::parse(dumped.cast<std::string>());
}

py::object py_from_json(const ordered_json& j) {
  return py::module_::import("json").attr("loads")(py::str(j.dump()));
}

ExperimentConfig config_from_py(const py::handle& obj) {
  return ExperimentConfig::from_json(json_from_py(obj));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Peaked-circuit estimators for infinite-temperature correlation "
      "functions";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const ArgumentError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const CapacityError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const LookupError& e) {
      PyErr_SetString(PyExc_KeyError, e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<StateVector>(m, "StateVector",
                          "Dense state of an n-qubit register")
      .def_property_readonly("n_qubits", &StateVector::n_qubits)
      .def("amplitudes",
           [](const StateVector& s) { return s.amplitudes(); },
           "All 2^n complex amplitudes, index bit i = qubit i")
      .def("__len__",
           [](const StateVector& s) { return s.amplitudes().size(); });

  py::class_<Circuit>(m, "Circuit", "Ordered gate list on a fixed register")
      .def_readonly("n_qubits", &Circuit::n_qubits)
      .def("__len__", [](const Circuit& c) { return c.gates.size(); })
      .def("depth", [](const Circuit& c) { return circuit_depth(c); })
      .def_property_readonly(
          "metadata", [](const Circuit& c) { return py_from_json(c.metadata); });

  py::class_<DiagonalObservable>(m, "DiagonalObservable",
                                 "Real diagonal observable, usually a "
                                 "Z-string")
      .def_static("zstring", &DiagonalObservable::zstring, py::arg("n_qubits"),
                  py::arg("support"))
      .def_static("custom", &DiagonalObservable::custom, py::arg("n_qubits"),
                  py::arg("diagonal"))
      .def_property_readonly("n_qubits", &DiagonalObservable::n_qubits)
      .def_property_readonly("support",
                             [](const DiagonalObservable& o) {
                               return o.support();
                             })
      .def("value", &DiagonalObservable::value, py::arg("z"))
      .def("spec_string", &DiagonalObservable::spec_string);

  py::class_<UpProjector>(m, "UpProjector",
                          "|0><0| on one qubit, identity elsewhere")
      .def(py::init([](int qubit) { return UpProjector{qubit}; }),
           py::arg("qubit"))
      .def_readwrite("qubit", &UpProjector::qubit);

  py::class_<OraclePredicate>(m, "OraclePredicate",
                              "Named marking predicate with exact count")
      .def_static(
          "explicit_set",
          [](int n_qubits, std::vector<std::uint64_t> marked) {
            return OraclePredicate::explicit_set(n_qubits, std::move(marked));
          },
          py::arg("n_qubits"), py::arg("marked"))
      .def_static("bit_conjunction", &OraclePredicate::bit_conjunction,
                  py::arg("n_qubits"), py::arg("constraints"))
      .def_property_readonly("n_qubits", &OraclePredicate::n_qubits)
      .def_property_readonly("marked_count", &OraclePredicate::marked_count)
      .def("matches", &OraclePredicate::matches, py::arg("z"));

  py::class_<ShotHistogram>(m, "ShotHistogram",
                            "Measurement counts keyed by basis index")
      .def_readonly("n_qubits", &ShotHistogram::n_qubits)
      .def_readonly("total_shots", &ShotHistogram::total_shots)
      .def_property_readonly("counts",
                             [](const ShotHistogram& h) {
                               py::dict out;
                               for (const auto& [z, c] : h.counts) {
                                 out[py::str(h.bitstring(z))] = c;
                               }
                               return out;
                             },
                             "Counts keyed by bitstring, qubit 0 rightmost");

  py::class_<NoiseParams>(m, "NoiseParams",
                          "Depolarizing strengths per gate class")
      .def(py::init([](double p1, double p2, int trajectories) {
             NoiseParams n;
             n.p1 = p1;
             n.p2 = p2;
             n.trajectories = trajectories;
             n.validate();
             return n;
           }),
           py::arg("p1"), py::arg("p2"), py::arg("trajectories") = 1000)
      .def_readwrite("p1", &NoiseParams::p1)
      .def_readwrite("p2", &NoiseParams::p2)
      .def_readwrite("trajectories", &NoiseParams::trajectories);

  py::class_<EstimatorValues>(m, "EstimatorValues",
                              "The five sums behind every estimate")
      .def_readonly("c_projected", &EstimatorValues::c_projected)
      .def_readonly("c_full", &EstimatorValues::c_full)
      .def_readonly("s_a", &EstimatorValues::s_a)
      .def_readonly("denominator", &EstimatorValues::denominator)
      .def_readonly("expectation", &EstimatorValues::expectation);

  m.def("zero_state", &zero_state, py::arg("n_qubits"));
  m.def("haar_random_state", &haar_random_state, py::arg("n_qubits"),
        py::arg("seed"));
  m.def("apply_circuit", &apply_circuit, py::arg("state"), py::arg("circuit"));
  m.def("measure_sample", &measure_sample, py::arg("state"), py::arg("shots"),
        py::arg("seed"));
  m.def("derive_seed", &derive_seed, py::arg("seed"), py::arg("domain"),
        py::arg("index"));

  m.def("parse_observable", &parse_observable, py::arg("text"),
        py::arg("n_qubits"));
  m.def("parse_projector", &parse_projector, py::arg("text"),
        py::arg("n_qubits"));
  m.def("heaviside_oracle", &heaviside_oracle, py::arg("observable"),
        "Marks indices where the diagonal is positive");
  m.def("conjoined_oracle", &conjoined_oracle, py::arg("observable"),
        py::arg("projector"),
        "Marks positive-diagonal indices inside the projected subspace");

  m.def("build_grover", &build_grover, py::arg("n_qubits"),
        py::arg("predicate"), py::arg("t"));
  m.def(
      "build_shallow",
      [](int n_qubits, const py::handle& spec) {
        return build_shallow(n_qubits, ShallowSpec::from_json(
                                           json_from_py(spec)));
      },
      py::arg("n_qubits"), py::arg("spec"));
  m.def("lower_circuit", &lower_circuit, py::arg("circuit"));
  m.def("export_qasm", &export_qasm, py::arg("circuit"));
  m.def("marked_probability", &marked_probability, py::arg("state"),
        py::arg("predicate"));
  m.def("grover_success_probability", &grover_success_probability,
        py::arg("marked"), py::arg("total"), py::arg("t"));
  m.def("optimal_iterations", &optimal_iterations, py::arg("marked"),
        py::arg("total"));

  m.def("itcf_projected", &itcf_projected, py::arg("state"),
        py::arg("observable"), py::arg("projector"));
  m.def("itcf_full", &itcf_full, py::arg("state"), py::arg("observable"),
        py::arg("projector"));
  m.def("support_overlap", &support_overlap, py::arg("state"),
        py::arg("observable"), py::arg("projector"));
  m.def("biased_ratio", &biased_ratio, py::arg("state"), py::arg("observable"),
        py::arg("projector"));
  m.def("exact_trace_itcf", &exact_trace_itcf, py::arg("observable"),
        py::arg("projector"), py::arg("n_qubits"));
  m.def("exact_values", &exact_values, py::arg("state"), py::arg("observable"),
        py::arg("projector"));
  m.def(
      "shot_estimates",
      [](const ShotHistogram& hist, const DiagonalObservable& obs,
         UpProjector proj) {
        return py_from_json(shot_estimates(hist, obs, proj).to_json());
      },
      py::arg("histogram"), py::arg("observable"), py::arg("projector"));
  m.def(
      "haar_average_itcf",
      [](int n_qubits, const DiagonalObservable& obs, UpProjector proj,
         int num_states, std::uint64_t seed) {
        const HaarAverage avg =
            haar_average_itcf(n_qubits, obs, proj, num_states, seed);
        py::dict out;
        out["report"] = py_from_json(avg.report.to_json());
        out["variance_c_projected"] = avg.variance_c_projected;
        out["variance_expectation"] = avg.variance_expectation;
        return out;
      },
      py::arg("n_qubits"), py::arg("observable"), py::arg("projector"),
      py::arg("num_states"), py::arg("seed"));

  m.def(
      "apply_noisy_circuit",
      [](const StateVector& state, const Circuit& circuit,
         const NoiseParams& noise, const DiagonalObservable& obs,
         UpProjector proj, std::uint64_t seed) {
        return py_from_json(
            apply_noisy_circuit(state, circuit, noise, obs, proj, seed)
                .report.to_json());
      },
      py::arg("state"), py::arg("circuit"), py::arg("noise"),
      py::arg("observable"), py::arg("projector"), py::arg("seed"));

  m.def(
      "run_experiment",
      [](const py::handle& config) {
        return py_from_json(run_experiment(config_from_py(config)).to_json());
      },
      py::arg("config"), "Runs one experiment described by a config dict");
  m.def(
      "sweep_grover_t",
      [](const py::handle& config, int t_min, int t_max) {
        return py_from_json(
            sweep_grover_T(config_from_py(config), t_min, t_max).to_json());
      },
      py::arg("config"), py::arg("t_min") = 1, py::arg("t_max") = 10);
  m.def(
      "compare_methods",
      [](const py::sequence& configs) {
        std::vector<ExperimentConfig> parsed;
        parsed.reserve(py::len(configs));
        for (const py::handle& item : configs) {
          parsed.push_back(config_from_py(item));
        }
        return py_from_json(compare_methods(parsed).to_json());
      },
      py::arg("configs"));
  m.def(
      "sample_experiment",
      [](const py::handle& config) {
        return sample_experiment(config_from_py(config));
      },
      py::arg("config"));
  m.def(
      "experiment_qasm",
      [](const py::handle& config) {
        return export_qasm(
            lower_circuit(build_experiment_circuit(config_from_py(config))));
      },
      py::arg("config"), "Lowered OpenQASM 2.0 for the config's circuit");
}
