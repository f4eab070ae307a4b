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

#include "superx/report.hpp"

#include <random>
#include <thread>

namespace superx {

nlohmann::json BuildReport::to_json() const {
  nlohmann::json j = {{"format_version", 1},
                      {"family", family},
                      {"d", d},
                      {"M", M},
                      {"tol", tol.to_string(17)},
                      {"s", s.to_string()},
                      {"w", w.to_string()},
                      {"achieved", achieved.to_string(17)},
                      {"cert_error_bound", cert_error_bound.to_string(17)},
                      {"measured_sup_error", measured_sup_error.to_string(17)},
                      {"samples", samples},
                      {"seed", seed},
                      {"precision_bits", precision_bits},
                      {"wall_time", wall_time}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::vector<BigVec> sample_points(int d, long n, std::uint64_t seed, Precision prec, int cell_M,
                                  const BigReal& offset) {
  std::mt19937_64 rng(seed);
  // 53 random bits per coordinate, exact in BigReal.
  std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << 53) - 1);
  const BigReal scale = BigReal::exp2i(-53, prec);
  std::vector<BigVec> out;
  out.reserve(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) {
    BigVec x(d);
    for (int k = 0; k < d; ++k) {
      BigReal v = BigReal(static_cast<long>(bits(rng)), prec) * scale;
      if (cell_M > 0) {
        BigReal t = v * cell_M;
        BigReal cell = floor(t);
        BigReal local = t - cell;
        BigReal off = offset * cell_M;
        if (local < off) local = off;
        if (local > 1 - off) local = 1 - off;
        if (cell >= cell_M) cell = BigReal(cell_M - 1L, prec);
        v = (cell + local) / cell_M;
      }
      x(k) = v;
    }
    out.push_back(std::move(x));
  }
  return out;
}

SupError measure_sup_error(const NetGraph& net, const Target& f, const std::vector<BigVec>& pts,
                           int workers) {
  const size_t n = pts.size();
  const size_t w = static_cast<size_t>(std::max(1, workers));
  std::vector<SupError> part(w);
  auto run = [&](size_t id) {
    SupError& e = part[id];
    e.sup = BigReal(0L, net.precision_bits());
    for (size_t i = id; i < n; i += w) {
      BigReal err = abs(evaluate(net, pts[i]) - f(pts[i]));
      ++e.samples;
      if (err > e.sup || e.worst_x.size() == 0) {
        e.sup = max(e.sup, err);
        e.worst_x = pts[i];
      }
    }
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (size_t i = 0; i < w; ++i) pool.emplace_back(run, i);
    for (auto& t : pool) t.join();
  }
  SupError total = part[0];
  for (size_t i = 1; i < w; ++i) {
    total.samples += part[i].samples;
    if (part[i].sup > total.sup) {
      total.sup = part[i].sup;
      total.worst_x = part[i].worst_x;
    }
  }
  return total;
}

}  // namespace superx
