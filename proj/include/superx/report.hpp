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

#ifndef SUPERX_REPORT_HPP_
#define SUPERX_REPORT_HPP_

#include <cstdint>
#include <string>

#include <json.hpp>

#include "superx/bigreal.hpp"
#include "superx/netgraph.hpp"
#include "superx/targets.hpp"

namespace superx {

struct BuildReport {
  std::string family;
  int d = 1;
  int M = 0;
  BigReal tol;
  BigReal s;
  BigReal w;
  BigReal achieved;
  BigReal cert_error_bound;
  BigReal measured_sup_error;
  long samples = 0;
  std::uint64_t seed = 0;
  double wall_time = 0;
  Precision precision_bits = 0;
  // Family-specific fields merged into the JSON object.
  nlohmann::json extra = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct SupError {
  BigReal sup;
  long samples = 0;
  BigVec worst_x;
};

// Sample points in [0,1]^d from mt19937_64(seed). With cell_M > 0 every
// coordinate is pushed at least `offset` away from the faces k / cell_M.
std::vector<BigVec> sample_points(int d, long n, std::uint64_t seed, Precision prec, int cell_M = 0,
                                  const BigReal& offset = BigReal());

// sup |net(x) - f(x)| over the points, optionally in `workers` chunks.
SupError measure_sup_error(const NetGraph& net, const Target& f, const std::vector<BigVec>& pts,
                           int workers = 1);

}  // namespace superx

#endif  // SUPERX_REPORT_HPP_
