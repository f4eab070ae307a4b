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

#ifndef SUPERX_TARGETS_HPP_
#define SUPERX_TARGETS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "superx/bigreal.hpp"

namespace superx {

// A continuous (or deliberately discontinuous) function on [0,1]^d with a
// known range and modulus of continuity.
struct Target {
  std::string spec;
  int d = 1;
  std::function<BigReal(const BigVec&)> f;
  BigReal lo;  // min of f on the cube
  BigReal hi;  // max of f on the cube
  // Upper bound on |f(x) - f(y)| for |x - y|_2 <= delta.
  std::function<BigReal(const BigReal&)> omega;

  BigReal operator()(const BigVec& x) const { return f(x); }
  BigReal at(const BigReal& x) const;  // d = 1 convenience
  BigReal max_abs() const { return max(abs(lo), abs(hi)); }
};

// Builtins: "const:c", "linear", "square", "sin:k" (sin(2 pi k t)),
// "step", "csv:path". For d > 1 the builtins act on the coordinate mean t.
// CSV tables have columns x,f sorted by x and are linearly interpolated
// (d = 1 only).
Target make_target(const std::string& spec, int d, Precision prec);

}  // namespace superx

#endif  // SUPERX_TARGETS_HPP_
