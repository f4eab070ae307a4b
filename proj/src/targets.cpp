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

#include "superx/targets.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "superx/errors.hpp"

namespace superx {

BigReal Target::at(const BigReal& x) const {
  BigVec v(1);
  v(0) = x;
  return f(v);
}

namespace {

BigReal mean(const BigVec& x) {
  BigReal s(0L, x(0).precision());
  for (Eigen::Index k = 0; k < x.size(); ++k) s += x(k);
  return s / static_cast<long>(x.size());
}

// Distance bound on the mean given a Euclidean displacement bound.
BigReal mean_delta(const BigReal& delta, int d) {
  BigReal t = delta / sqrt(BigReal(static_cast<long>(d), delta.precision()));
  return min(t, BigReal(1L, delta.precision()));
}

std::vector<std::pair<BigReal, BigReal>> read_table(const std::string& path, Precision prec) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open target table " + path);
  std::vector<std::pair<BigReal, BigReal>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw SchemaError(path + ": expected x,f rows");
    std::string xs = line.substr(0, comma), fs = line.substr(comma + 1);
    if (rows.empty() && (xs == "x" || xs == "format_version")) continue;  // header
    rows.emplace_back(BigReal::parse(xs, prec), BigReal::parse(fs, prec));
  }
  if (rows.size() < 2) throw SchemaError(path + ": need at least two rows");
  for (size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i - 1].first < rows[i].first)) throw SchemaError(path + ": x must increase");
  }
  return rows;
}

}  // namespace

Target make_target(const std::string& spec, int d, Precision prec) {
  if (d < 1) throw SchemaError("target dimension must be positive");
  Target t;
  t.spec = spec;
  t.d = d;
  const BigReal zero(0L, prec), one(1L, prec);
  if (spec.rfind("const:", 0) == 0) {
    const BigReal c = BigReal::parse(spec.substr(6), prec);
    t.f = [c](const BigVec& x) { return BigReal(c, x(0).precision()); };
    t.lo = t.hi = c;
    t.omega = [zero](const BigReal&) { return zero; };
  } else if (spec == "linear") {
    t.f = [](const BigVec& x) { return mean(x); };
    t.lo = zero;
    t.hi = one;
    t.omega = [d](const BigReal& delta) { return mean_delta(delta, d); };
  } else if (spec == "square") {
    t.f = [](const BigVec& x) {
      BigReal m = mean(x);
      return m * m;
    };
    t.lo = zero;
    t.hi = one;
    // |a^2 - b^2| <= e (2 - e) on [0,1] when |a - b| <= e.
    t.omega = [d](const BigReal& delta) {
      BigReal e = mean_delta(delta, d);
      return e * (2 - e);
    };
  } else if (spec.rfind("sin:", 0) == 0) {
    const BigReal k = BigReal::parse(spec.substr(4), prec);
    if (!(k > 0)) throw SchemaError("sin:k needs k > 0");
    const BigReal two_pi_k = 2 * BigReal::pi(prec) * k;
    t.f = [two_pi_k](const BigVec& x) { return sin(BigReal(BigReal(two_pi_k, x(0).precision()) * mean(x))); };
    const BigReal half_pi = BigReal::pi(prec) / 2;
    t.hi = two_pi_k >= half_pi ? one : sin(two_pi_k);
    t.lo = two_pi_k >= 3 * half_pi ? -one : min(zero, sin(two_pi_k));
    t.omega = [two_pi_k, d, half_pi](const BigReal& delta) {
      BigReal arg = two_pi_k * mean_delta(delta, d) / 2;
      return arg >= half_pi ? BigReal(2L, delta.precision()) : BigReal(2 * sin(arg));
    };
  } else if (spec == "step") {
    const BigReal half(BigReal::exp2i(-1, prec));
    t.f = [half](const BigVec& x) {
      return BigReal(mean(x) >= half ? 1L : 0L, x(0).precision());
    };
    t.lo = zero;
    t.hi = one;
    t.omega = [zero, one](const BigReal& delta) { return delta.is_zero() ? zero : one; };
  } else if (spec.rfind("csv:", 0) == 0) {
    if (d != 1) throw SchemaError("table targets are one-dimensional");
    auto rows = std::make_shared<std::vector<std::pair<BigReal, BigReal>>>(read_table(spec.substr(4), prec));
    t.f = [rows](const BigVec& x) {
      const BigReal& v = x(0);
      const auto& r = *rows;
      if (v <= r.front().first) return BigReal(r.front().second, v.precision());
      if (v >= r.back().first) return BigReal(r.back().second, v.precision());
      size_t i = 1;
      while (r[i].first < v) ++i;
      const auto& [x0, f0] = r[i - 1];
      const auto& [x1, f1] = r[i];
      return BigReal(f0 + (f1 - f0) * (v - x0) / (x1 - x0));
    };
    BigReal lo = rows->front().second, hi = lo, lip(0L, prec);
    for (size_t i = 0; i < rows->size(); ++i) {
      lo = min(lo, (*rows)[i].second);
      hi = max(hi, (*rows)[i].second);
      if (i > 0) {
        const auto& [x0, f0] = (*rows)[i - 1];
        const auto& [x1, f1] = (*rows)[i];
        lip = max(lip, abs(f1 - f0) / (x1 - x0));
      }
    }
    t.lo = lo;
    t.hi = hi;
    const BigReal span = hi - lo;
    t.omega = [lip, span](const BigReal& delta) { return min(BigReal(lip * delta), span); };
  } else {
    throw SchemaError("unknown target '" + spec + "'");
  }
  return t;
}

}  // namespace superx
