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

#ifndef SUPERX_BUILD_A2_HPP_
#define SUPERX_BUILD_A2_HPP_

#include <cstdint>
#include <vector>

#include "superx/multiplier.hpp"
#include "superx/netgraph.hpp"
#include "superx/report.hpp"
#include "superx/targets.hpp"

namespace superx {

// Shifts used by the four overlapping partitions.
inline constexpr int kA2Shifts[4] = {-1, 0, 1, 2};

// One support component of psi(M x - q/2) inside [0, 1].
struct Segment {
  int q = 0;
  int p = 0;  // 1-based; the code on this segment is 2p - 1
  BigReal lo;
  BigReal hi;
  long code() const { return 2L * p - 1; }
};

// Components with nonempty interior, left to right. M must be even, M >= 4.
std::vector<Segment> layout(int M, int q, Precision prec);

// Number of distinct codes over all shifts.
int code_count(int M);

// Point whose target value every segment with code 2p - 1 shares.
BigReal code_center(int M, int p, Precision prec);

// nu(M x - q/2 + 1/2), piecewise constant on the segments.
BigReal G_eval(int M, int q, const BigReal& x);
// psi(M x - q/2).
BigReal psi_eval(int M, int q, const BigReal& x);

struct A2Params {
  int M = 4;
  BigReal s;
  BigReal w;
  BigReal amp;   // 2 max|f|
  BigReal out_scale;  // 1, or 0 for the zero target
  MultiplierParams mult;
  std::vector<BigReal> z;  // winding targets per code, in [0, 2)
};

// amp theta(s sin(w G_q(x))).
BigReal v_eval(const A2Params& p, int q, const BigReal& x);

// sum_q v_q(x) psi_q(x) with exact products.
BigReal a2_closed_form(const A2Params& p, const BigReal& x);

// The {sin, arcsin} network, with propagated ranges declared on every
// sin and arcsin node.
NetGraph a2_network(const A2Params& p, Precision prec);

struct A2Options {
  int M = 8;
  BigReal tol;
  Precision precision = kDefaultPrecision;
  bool auto_precision = false;
  long iteration_cap = 1000000;
  long samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double w_start = 1e-3;
  int w_retries = 10;
};

struct A2Build {
  NetGraph net;
  A2Params params;
  BuildReport report;
};

// Throws SchemaError for d != 1 or an invalid M, SolverFailure,
// ScreenFailure or PrecisionError otherwise.
A2Build build_a2(const Target& f, const A2Options& opt);

}  // namespace superx

#endif  // SUPERX_BUILD_A2_HPP_
