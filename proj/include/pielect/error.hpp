// Copyright 2026 The pielect Authors
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

namespace pielect {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed term, network, hypergraph or trace text.
struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

// A numeral or `out` placed in binding position.
struct BindingError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Replication depth, automorphism search size and similar hard limits.
struct BudgetError : Error {
  using Error::Error;
};

// Index out of range, unmapped name, mismatched domains.
struct DomainError : Error {
  using Error::Error;
};

struct NoStepAvailable : Error {
  using Error::Error;
};

struct ModeMismatch : Error {
  using Error::Error;
};

// Raised when a constructed round fails its symmetry certificate.
struct SymmetryBroken : Error {
  using Error::Error;
};

}  // namespace pielect
