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

#ifndef SUPERX_BUILD_A1_HPP_
#define SUPERX_BUILD_A1_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "superx/netgraph.hpp"
#include "superx/report.hpp"
#include "superx/targets.hpp"
#include "superx/winding.hpp"

namespace superx {

// Analytic non-polynomial activation used on an interval (alpha, beta).
struct Sigma1 {
  ActKind kind = ActKind::Sin;
  BigReal alpha;
  BigReal beta;

  static Sigma1 sin_on_unit(Precision prec);  // sin on (0, 1)
  static Sigma1 exp_on_unit(Precision prec);  // exp on (0, 1)
  static Sigma1 parse(const std::string& name, Precision prec);
  BigReal center() const { return (alpha + beta) / 2; }
  BigReal operator()(const BigReal& x) const { return apply_activation(Activation(kind), x); }
  std::string name() const;
};

struct GridSpec {
  int d = 1;
  int M = 1;
  long cells() const;  // (M + 1)^d
};

struct A1Params {
  Sigma1 sigma1;
  GridSpec grid;
  BigReal A;  // output range used by the network (may be widened)
  BigReal B;
  BigReal s;
  BigReal w;
  std::vector<BigReal> targets;  // y_n, n = 1..N
};

// 1 + sum_k (M+1)^(k-1) floor(M x_k).
long grid_index(const GridSpec& g, const BigVec& x);
// Multi-index (m_1..m_d) of cell n.
std::vector<long> cell_digits(const GridSpec& g, long n);
// A point of [0,1]^d on which grid_index is n: the cell center, clipped.
BigVec cell_center(const GridSpec& g, long n, Precision prec);

// (B - A) frac(s sigma1(c + w n)) + A.
BigReal u_eval(const A1Params& p, long n);

// The fixed {sigma1, floor} network for the given weights. Node ids: inputs
// 0..d-1, floor(M x_k) nodes d..2d-1, the sigma1 node 2d, the winding floor
// node 2d+1, output 2d+2.
NetGraph a1_network(const A1Params& p, Precision prec);

struct A1Options {
  GridSpec grid;
  BigReal tol;
  Sigma1 sigma1;
  std::string solver = "inductive";  // or "oracle"
  Precision precision = kDefaultPrecision;
  bool auto_precision = false;
  long iteration_cap = 1000000;
  BigReal s_max;  // oracle only
  long samples = 10000;
  std::uint64_t seed = 1;
  int workers = 1;
  double w_start = 1e-3;
  int w_retries = 10;
};

struct A1Build {
  NetGraph net;
  A1Params params;
  BuildReport report;
};

// Throws SolverFailure or PrecisionError.
A1Build build_a1(const Target& f, const A1Options& opt);

}  // namespace superx

#endif  // SUPERX_BUILD_A1_HPP_
