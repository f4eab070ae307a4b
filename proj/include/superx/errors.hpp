// Copyright 2026 The superx Authors
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

#ifndef SUPERX_ERRORS_HPP_
#define SUPERX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace superx {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An activation was evaluated outside its domain (arcsin outside [-1, 1]).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, int node = -1)
      : Error(what), node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

class CycleError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ChecksumError : public Error {
 public:
  using Error::Error;
};

// Working precision is too small for the requested magnitudes.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// No winding weight found within the search bounds.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

class RecursionBudgetExceeded : public SolverFailure {
 public:
  using SolverFailure::SolverFailure;
};

class ScreenFailure : public Error {
 public:
  using Error::Error;
};

class CurvatureError : public Error {
 public:
  using Error::Error;
};

// A node lacks a declared input range, or a range is unusable.
class RangeError : public Error {
 public:
  using Error::Error;
};

class ShiftError : public Error {
 public:
  using Error::Error;
};

class NonPwlActivation : public Error {
 public:
  using Error::Error;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace superx

#endif  // SUPERX_ERRORS_HPP_
