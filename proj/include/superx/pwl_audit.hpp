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

#ifndef SUPERX_PWL_AUDIT_HPP_
#define SUPERX_PWL_AUDIT_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "superx/netgraph.hpp"

namespace superx {

struct PwlPiece {
  mpq_class slope;
  mpq_class intercept;
  mpq_class at(const mpq_class& x) const { return slope * x + intercept; }
  friend bool operator==(const PwlPiece&, const PwlPiece&) = default;
};

// Exact piecewise-linear function on [lo, hi]. knots = lo, interior
// breakpoints..., hi. Piece i lives on the open interval (knots[i],
// knots[i+1]); every knot carries its own point value, which differs from a
// one-sided limit exactly at a jump.
struct PwlFunc {
  std::vector<mpq_class> knots;   // strictly increasing, size >= 2
  std::vector<PwlPiece> pieces;   // knots.size() - 1
  std::vector<mpq_class> values;  // knots.size()

  static PwlFunc affine(const mpq_class& slope, const mpq_class& intercept, const mpq_class& lo = 0,
                        const mpq_class& hi = 1);

  const mpq_class& lo() const { return knots.front(); }
  const mpq_class& hi() const { return knots.back(); }
  mpq_class operator()(const mpq_class& x) const;
  // Interior breakpoints.
  std::vector<mpq_class> breaks() const;
  size_t breakpoint_count() const { return knots.size() - 2; }
  // True when the value at knot i differs from an adjacent one-sided limit.
  bool jump_at(size_t i) const;
  bool has_jump() const;
  // Drops interior knots where both neighbouring pieces and the point value agree.
  void normalize();
  // Throws SchemaError when the invariants fail.
  void validate() const;
  nlohmann::json to_json() const;
};

// sum_j weights_j fs_j + bias. Throws DomainMismatch for different domains.
PwlFunc affine_combine(const std::vector<PwlFunc>& fs, const std::vector<mpq_class>& weights,
                       const mpq_class& bias);

// Identity, ReLU, LeakyReLU or Step; NonPwlActivation otherwise.
PwlFunc apply_activation(const PwlFunc& f, const Activation& act);

// Exact function of a one-input PWL network on [0, 1].
PwlFunc compose_network(const NetGraph& net);

// Largest N with points a_0 < ... < a_N and (-1)^n f(a_n) > 0; -1 when f is
// nowhere positive.
long sign_changes(const PwlFunc& f);

// Layered, fully connected, one-input one-output architecture.
struct Architecture {
  std::vector<int> widths;
  Activation act = Activation(ActKind::ReLU);

  // Weights in layer order: per neuron its incoming weights, then its bias.
  NetGraph instantiate(const std::vector<BigReal>& weights, Precision prec = 64) const;
  long weight_count() const;
  nlohmann::json to_json() const;
  static Architecture from_json(const nlohmann::json& j);
};

// Seeded random instance: weights uniform in [-1, 1], each bias placing the
// neuron's zero crossing at a uniform random point of [0, 1]. Exact rationals.
NetGraph random_instance(const Architecture& a, std::uint64_t seed);

struct OscillationBound {
  long breakpoints = 0;  // B: static bound on output breakpoints
  bool jumps = false;    // some activation is discontinuous
  long sign_changes = 0;  // B + 1, or 3B + 3 with jumps
};

// Static recursion b_out <= 2 b_in + 1 per PWL neuron; weights are ignored.
OscillationBound oscillation_bound(const NetGraph& net);
OscillationBound oscillation_bound(const Architecture& a);

struct RefutationCertificate {
  long N = 0;
  long bound = 0;
  bool refuted = false;
  std::vector<std::string> witness_points;  // (k + 1/2) / (N + 1), k = 0..N
  nlohmann::json to_json() const;
};

// Refuted when sin((N+1) pi x), which alternates at N + 1 points, would
// need more sign changes than the architecture can produce.
RefutationCertificate refutation_certificate(const Architecture& a, long N);

struct AuditReport {
  Architecture arch;
  OscillationBound bound;
  long draws = 0;
  long max_observed = 0;
  std::uint64_t seed = 0;
  RefutationCertificate refutation;
  nlohmann::json to_json() const;
};

AuditReport audit(const Architecture& a, long N, long draws, std::uint64_t seed);

}  // namespace superx

#endif  // SUPERX_PWL_AUDIT_HPP_
