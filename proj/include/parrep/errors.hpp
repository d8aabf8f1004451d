// Copyright 2026 The parrep-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARREP_ERRORS_HPP_
#define PARREP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace parrep {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not match the game they are used with.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive computation would exceed the configured enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// An argument is outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An input violates a structural contract (non-reversible chain, irregular
// degree, normalization, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// An iterative method ran out of budget before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace parrep

#endif  // PARREP_ERRORS_HPP_
