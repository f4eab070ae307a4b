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

#ifndef SUPERX_BUILD_A3_HPP_
#define SUPERX_BUILD_A3_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "superx/build_a2.hpp"
#include "superx/netgraph.hpp"
#include "superx/report.hpp"

namespace superx {

// Modulus of continuity of asin on [-1, 1]: pi/2 - asin(1 - h).
BigReal omega_asin(const BigReal& h);

// One-sided difference quotient of sigma3 on the middle branch; backward
// for x > 1 - 2 delta. Throws DomainError outside [-1, 1].
BigReal arcsin_via_sigma3(const BigReal& x, const BigReal& delta);
// Error bound of arcsin_via_sigma3.
BigReal arcsin_sigma3_bound(const BigReal& delta);

// Central-difference arcsin used in rewritten graphs:
//   pi (sigma3(z + h) - sigma3(z - h)) / (2h) - 3 pi / 2.
struct ArcsinGadget {
  BigReal h;

  BigReal eval(const BigReal& z) const;
  // For exact inputs in [-1, 1].
  BigReal local_bound() const;
  // Valid for inputs in [-3/2 + h, 3/2 - h].
  BigReal lipschitz_bound() const;
};

// sin(t) recovered from the right branch of sigma3 at x = t / pi + 2 shift:
//   sin(t) = pi x^2 (sigma3(x) - 7) + 3 pi x.
// x^2 uses a centered sigma3 square gadget and the product a centered
// sigma3 multiplier, both expanded at 0.
struct SinGadget {
  Interval range;
  BigReal shift;  // integer
  BigReal delta_s;  // square step
  BigReal delta_m;  // product step

  BigReal x_lo, x_hi, x_c, r;
  BigReal e_X;       // bound on |Sq - x^2|
  BigReal X_c, R_x;  // Sq in X_c +- R_x
  BigReal Y_c, R_y;  // sigma3(x) - 7 in Y_c +- R_y
  BigReal Y_abs;

  // Without an explicit shift the smallest one with x >= 3/2 is used.
  // Throws ShiftError when the shifted range leaves [1, inf).
  static SinGadget make(const Interval& range, const BigReal& delta_s, const BigReal& delta_m,
                        std::optional<long> shift = std::nullopt);

  BigReal eval(const BigReal& t) const;
  // sup over the range of |eval(t) - sin(t)|.
  BigReal local_bound() const;
  BigReal lipschitz_bound() const;
};

BigReal sin_via_sigma3(const BigReal& t, const SinGadget& g);

struct RewriteParams {
  // End-to-end deviation the tuner aims for.
  BigReal target_budget = BigReal(1e-6, 64);
  // Primary input ranges; defaults to [0, 1] per input.
  std::vector<Interval> inputs;
  // Minimum output precision; the tuner may raise it.
  Precision precision = 0;
  // Pinned gadget parameters; each one that is set is excluded from tuning.
  std::optional<BigReal> fd_step;     // arcsin step h
  std::optional<BigReal> mult_delta;  // sin gadget square and product steps
  std::optional<long> sin_shift;
  int max_iterations = 200;
};

struct NodeBudget {
  int source_node = -1;
  std::string label;
  std::string gadget;  // "sin", "arcsin", "identity", "constant"
  nlohmann::json params;
  BigReal local;
  BigReal lipschitz;
  BigReal sensitivity;
  BigReal budget;    // sensitivity * local
  BigReal rounding;  // sensitivity * internal rounding at the output precision
};

struct RewriteReport {
  std::vector<NodeBudget> nodes;
  BigReal target_budget;
  BigReal gadget_total;
  BigReal rounding_total;
  BigReal total;
  Precision precision_bits = 0;
  int iterations = 0;
  long source_nodes = 0;
  long rewritten_nodes = 0;

  nlohmann::json to_json() const;
};

struct RewriteResult {
  NetGraph net;
  RewriteReport report;
};

// Replaces every sin and arcsin node by a sigma3 gadget. Constant nodes are
// folded. Throws RangeError if a non-constant sin or arcsin node has no
// declared range and SchemaError for other activations.
RewriteResult rewrite_a2_to_a3(const NetGraph& src, const RewriteParams& params = {});

struct A3Build {
  NetGraph net;
  A2Build source;
  RewriteReport rewrite;
  BuildReport report;
};

// build_a2 followed by the rewrite. The certificate adds the rewrite budget
// to the A2 certificate.
A3Build build_a3(const Target& f, const A2Options& opt, const RewriteParams& rp = {});

}  // namespace superx

#endif  // SUPERX_BUILD_A3_HPP_
