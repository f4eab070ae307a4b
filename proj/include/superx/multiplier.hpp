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

#ifndef SUPERX_MULTIPLIER_HPP_
#define SUPERX_MULTIPLIER_HPP_

#include <string>
#include <vector>

#include "superx/netgraph.hpp"

namespace superx {

// Second-difference product gadget. Inputs are normalized by their bounds,
// x' = x / Cx and y' = y / Cy, and the product is assembled from two
// approximate squares,
//   x y = Cx Cy (S((x'+y')/2) - S((x'-y')/2)),
//   S(u) = (act(x0 + delta u) + act(x0 - delta u) - 2 act(x0)) / (act''(x0) delta^2).
struct MultiplierParams {
  ActKind act = ActKind::Sin;
  BigReal x0;
  BigReal delta;
  BigReal Cx;
  BigReal Cy;
};

// act''(x0); Sin and Sigma3 (x0 = 0) only.
BigReal second_derivative(ActKind act, const BigReal& x0);

// sup over |u| <= 1 of |S(u) - u^2|.
BigReal square_error(ActKind act, const BigReal& delta);

// sup over |u| <= 1 of |S'(u) - 2u|.
BigReal square_slope_error(ActKind act, const BigReal& delta);

// Cx Cy square_error(delta): bound on |gadget(x, y) - x y| for |x| <= Cx,
// |y| <= Cy. Both square errors carry the same sign, so they do not add.
BigReal multiplier_error_bound(const MultiplierParams& mp);

// Smallest-cost delta with square_error(delta) <= e, by bisection.
BigReal delta_for_square_error(ActKind act, const BigReal& e);

// Throws CurvatureError when |act''(x0)| < 2^(-P/2), SchemaError for an
// unsupported activation or expansion point.
void check_multiplier(const MultiplierParams& mp);

// Appends S(u) to the builder. With fold_constant the act(x0) term is a
// bias instead of a constant neuron.
LinearForm square_form(GraphBuilder& g, ActKind act, const BigReal& x0, const BigReal& delta,
                       const LinearForm& u, const std::string& label, bool fold_constant);

// Approximate x y for forms bounded by Cx, Cy.
LinearForm multiply_forms(GraphBuilder& g, const MultiplierParams& mp, const LinearForm& x,
                          const LinearForm& y, const std::string& label, bool fold_constants);

// Two-input, six-neuron network (x, y) -> approximately x y.
NetGraph multiplier_net(const MultiplierParams& mp, Precision prec);

// Closed-form value of the six-neuron gadget.
BigReal multiplier_eval(const MultiplierParams& mp, const BigReal& x, const BigReal& y);

struct MultiplierSweepRow {
  BigReal delta;
  BigReal max_error;  // over the evaluation grid, through the network
  BigReal bound;      // multiplier_error_bound
};

// Max error of multiplier_net on a (grid+1)^2 lattice of [-Cx,Cx] x [-Cy,Cy]
// for each delta; the other parameters come from `base`.
std::vector<MultiplierSweepRow> multiplier_sweep(const MultiplierParams& base,
                                                 const std::vector<BigReal>& deltas, int grid,
                                                 Precision prec);

// Least-squares slope of log(max_error) against log(delta).
double convergence_order(const std::vector<MultiplierSweepRow>& rows);

}  // namespace superx

#endif  // SUPERX_MULTIPLIER_HPP_
