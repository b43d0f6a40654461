// Copyright 2026 The ftfix Authors
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

namespace ftfix {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller violated a precondition (out-of-range id, size mismatch).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Invalid FatTree parameters (odd or too small k).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A role assignment does not match the FatTree role multiset.
class AssignmentError : public Error {
 public:
  using Error::Error;
};

// A malfunction injection request cannot be satisfied.
class InjectionError : public Error {
 public:
  using Error::Error;
};

// Malformed input graph or file.
class InputError : public Error {
 public:
  using Error::Error;
};

// A fixation action no longer matches the graph it is applied to.
class PlanStaleError : public Error {
 public:
  using Error::Error;
};

// Instance too large for an exhaustive oracle.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search ran out of its node budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace ftfix
