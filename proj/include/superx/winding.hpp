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

#ifndef SUPERX_WINDING_HPP_
#define SUPERX_WINDING_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "superx/bigreal.hpp"
#include "superx/errors.hpp"
#include "superx/special.hpp"

namespace superx {

// Distance between x and y on the circle R / mZ.
template <typename Scalar>
Scalar wrap_dist(const Scalar& x, const Scalar& y, const Scalar& m) {
  using std::abs;
  using std::floor;
  using std::min;
  Scalar d = abs(x - y);
  d = d - m * floor(d / m);
  return min(d, Scalar(m - d));
}

// Euclidean norm of the coordinatewise circle displacements.
template <typename Scalar>
Scalar torus_dist(const Vec<Scalar>& b1, const Vec<Scalar>& b2, const Scalar& m) {
  using std::sqrt;
  if (b1.size() != b2.size()) throw ArityError("torus_dist: dimension mismatch");
  Scalar acc = m - m;
  for (Eigen::Index i = 0; i < b1.size(); ++i) {
    Scalar d = wrap_dist(b1(i), b2(i), m);
    acc += d * d;
  }
  return sqrt(acc);
}

struct WindingProblem {
  std::vector<BigReal> a;
  std::vector<BigReal> y;
  BigReal tol;
  BigReal modulus = BigReal(1L, 64);
  BigReal s_max = BigReal(1000L, 64);
  // Zero selects the default tol / (4 max|a|).
  BigReal step;
  long iteration_cap = 1000000;
  int workers = 1;

  int dim() const { return static_cast<int>(a.size()); }
  Precision precision() const;
  // Throws SchemaError when a field violates the problem invariants.
  void validate() const;
};

struct WindingSolution {
  BigReal s;
  BigReal achieved;  // max over n of the circle distance
  std::string solver;
  long evaluations = 0;
  Precision precision_bits = 0;
  std::vector<long> level_multipliers;  // inductive only, outermost first
};

// max_n wrap_dist(frac(s a_n / m) m, y_n, m) at the precision of the operands.
BigReal achieved_distance(const WindingProblem& p, const BigReal& s);

// Re-evaluates the distance at twice the working precision.
BigReal verify_doubled(const WindingProblem& p, const BigReal& s);

// Scans s = k * step, k = 0, 1, ..., up to s_max. The first k within tol
// opens a solution ball; the scan walks on through that ball and returns
// its best point (smallest distance, then smallest k), or nullopt. Throws PrecisionError if the working precision cannot
// resolve fractional parts at s_max.
std::optional<WindingSolution> solve_oracle(const WindingProblem& p);

// Recursive near-return construction. Throws RecursionBudgetExceeded when a
// level's scan hits iteration_cap and PrecisionError when the solution s is
// too large for the working precision.
std::optional<WindingSolution> solve_inductive(const WindingProblem& p);

// Integer-relation screen: true if some integer vector with entries bounded
// by `bound` gives a combination sum lambda_n a_n that vanishes to working
// precision. Uses lattice reduction on the embedding [I | K a].
struct RelationScreen {
  bool relation_found = false;
  std::vector<long> lambda;  // the detected relation
};
RelationScreen relation_screen(const std::vector<BigReal>& a, long bound = 65536);

struct PickW {
  BigReal w;
  std::vector<BigReal> a;
  int attempts = 0;
  std::uint64_t seed = 0;
};

// Chooses w so that sigma1(c + w n), n = 1..N, passes the relation screen.
// Throws ScreenFailure after `screen_budget` rejected candidates.
PickW pick_w(const std::function<BigReal(const BigReal&)>& sigma1, const BigReal& c,
             const BigReal& r, int N, int screen_budget = 8, std::uint64_t seed = 1);

// Number of bits needed to resolve fractional parts of s * max|a| / m to
// the tolerance.
long required_bits(const BigReal& s_abs_max, const std::vector<BigReal>& a, const BigReal& modulus,
                   const BigReal& tol);

// Decimal strings, or "sqrt(k)" for integer k.
BigReal parse_real(const std::string& text, Precision prec);

nlohmann::json to_json(const WindingProblem& p);
WindingProblem problem_from_json(const nlohmann::json& j, Precision prec_override = 0);
nlohmann::json to_json(const WindingSolution& s);

}  // namespace superx

#endif  // SUPERX_WINDING_HPP_
