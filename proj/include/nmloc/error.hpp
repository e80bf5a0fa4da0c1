// Copyright 2026 The nmloc Authors
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

namespace nmloc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (vector/matrix dimensions, qubit counts).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a numerical precondition (Hermiticity, unitarity, normalization).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A momentum-sector block is not unitary: the operator breaks translation symmetry.
class SymmetryViolation : public Error {
 public:
  using Error::Error;
};

/// Bad run configuration or CLI input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nmloc
