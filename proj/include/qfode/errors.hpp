// Copyright 2026 The qfode Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfode {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: index collision, non-unitary gate, shape mismatch, ...
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A size cap (qubits, dense matrix dimension) would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Configuration cannot be satisfied (bad key, partition beyond the k cap, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A metric whose denominator vanishes.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values appeared during time integration.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t piece_index)
      : Error(what), piece_index_(piece_index) {}

  /// Global index of the sub-subinterval (or classical step) that produced the first non-finite value.
  std::size_t piece_index() const noexcept { return piece_index_; }

 private:
  std::size_t piece_index_;
};

}  // namespace qfode
