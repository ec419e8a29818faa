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

#include <stdexcept>
#include <string>

namespace peaked {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: bad qubit index, size mismatch, out-of-range value.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a hard resource bound (qubit count, exhaustive-sum cap).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Unknown identifier (e.g. an unregistered oracle predicate id).
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Oracle marks nothing or everything; amplitude amplification is undefined.
class DegenerateOracleError : public Error {
 public:
  using Error::Error;
};

/// Oracle has no lowering to elementary gates.
class UnsupportedOracleError : public Error {
 public:
  using Error::Error;
};

/// Ratio estimator has zero denominator (no probability mass in the
/// projected subspace).
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

/// An operation was handed a value that violates its documented
/// preconditions (e.g. sampling from an unnormalized projected vector).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration failed validation; message lists field paths.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure; message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace peaked
