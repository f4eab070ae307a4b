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

#include "superx/winding.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

namespace superx {

using nlohmann::json;

Precision WindingProblem::precision() const {
  Precision p = 0;
  for (const BigReal& v : a) p = std::max(p, v.precision());
  return std::max<Precision>(p, 53);
}

void WindingProblem::validate() const {
  if (a.empty()) throw SchemaError("winding problem needs N >= 1 coefficients");
  if (a.size() != y.size()) throw SchemaError("winding problem: |a| != |y|");
  for (const BigReal& v : a) {
    if (v.is_zero()) throw SchemaError("winding coefficients must be nonzero");
  }
  if (!(modulus > 0)) throw SchemaError("modulus must be positive");
  if (!(tol > 0) || !(2 * tol < modulus)) throw SchemaError("need 0 < tol < modulus / 2");
  for (const BigReal& v : y) {
    if (v < 0 || !(v < modulus)) throw SchemaError("targets must lie in [0, modulus)");
  }
  if (iteration_cap < 1) throw SchemaError("iteration cap must be positive");
}

namespace {

BigReal max_abs(const std::vector<BigReal>& v) {
  BigReal m(0L, 2);
  for (const BigReal& x : v) m = max(m, abs(x));
  return m;
}

long ceil_log2(const BigReal& x) {
  if (!(x > 0)) return 0;
  return static_cast<long>(std::ceil(log2(x).to_double()));
}

}  // namespace

long required_bits(const BigReal& s_abs_max, const std::vector<BigReal>& a, const BigReal& modulus,
                   const BigReal& tol) {
  const long mag = std::max(0L, ceil_log2(s_abs_max * max_abs(a) / modulus));
  const long out = std::max(1L, ceil_log2(modulus / tol));
  return mag + out + 32;
}

BigReal achieved_distance(const WindingProblem& p, const BigReal& s) {
  const Precision prec = std::max(p.precision(), s.precision());
  const BigReal m(p.modulus, prec);
  BigReal worst(0L, prec);
  for (size_t n = 0; n < p.a.size(); ++n) {
    BigReal v = frac(BigReal(s * p.a[n] / m)) * m;
    worst = max(worst, wrap_dist(v, BigReal(p.y[n], prec), m));
  }
  return worst;
}

BigReal verify_doubled(const WindingProblem& p, const BigReal& s) {
  const Precision q = 2 * std::max(p.precision(), s.precision());
  WindingProblem hi = p;
  for (BigReal& v : hi.a) v = BigReal(v, q);
  for (BigReal& v : hi.y) v = BigReal(v, q);
  hi.modulus = BigReal(p.modulus, q);
  return achieved_distance(hi, BigReal(s, q));
}

std::optional<WindingSolution> solve_oracle(const WindingProblem& p) {
  p.validate();
  const Precision prec = p.precision();
  const int N = p.dim();
  const BigReal amax = max_abs(p.a);
  BigReal step = p.step.is_zero() ? BigReal(p.tol / (4 * amax), prec) : BigReal(p.step, prec);
  if (!(step > 0) || step > p.tol / (2 * amax)) {
    throw SchemaError("step must satisfy 0 < step <= tol / (2 max|a|)");
  }
  const long need = required_bits(p.s_max, p.a, p.modulus, p.tol);
  if (prec < need) {
    throw PrecisionError("oracle needs " + std::to_string(need) + " bits, working precision is " +
                         std::to_string(prec));
  }
  const BigReal m(p.modulus, prec);
  std::vector<BigReal> an(p.a.size()), yn(p.y.size());
  for (int n = 0; n < N; ++n) {
    an[n] = p.a[n] / m;
    yn[n] = BigReal(p.y[n], prec) / m;
  }
  const BigReal tol_n = p.tol / m;
  const double tol_d = tol_n.to_double() + 1e-9;
  const long k_max = floor(p.s_max / step).to_long();
  std::vector<double> inc(N), yd(N);
  for (int n = 0; n < N; ++n) {
    inc[n] = frac(BigReal(step * an[n])).to_double();
    yd[n] = yn[n].to_double();
  }

  constexpr long kChunk = 1L << 16;
  constexpr long kResync = 4096;
  const long n_chunks = k_max / kChunk + 1;
  struct Hit {
    long k = -1;
    long scanned = 0;
  };

  constexpr long kPolishCap = 1000000;
  auto exact_hit = [&](long k) {
    BigReal s = step * k;
    BigReal exact(0L, prec);
    for (int n = 0; n < N; ++n) {
      exact = max(exact, wrap_dist(frac(BigReal(s * an[n])), yn[n], BigReal(1L, prec)));
    }
    return exact <= tol_n && verify_doubled(p, s) <= p.tol;
  };

  // Scans one chunk; returns the first exact hit.
  auto scan_chunk = [&](long chunk) {
    Hit h;
    const long k0 = chunk * kChunk;
    const long k1 = std::min(k_max, k0 + kChunk - 1);
    std::vector<double> r(N);
    for (long k = k0; k <= k1; ++k) {
      if ((k - k0) % kResync == 0) {
        BigReal s = step * k;
        for (int n = 0; n < N; ++n) r[n] = frac(BigReal(s * an[n])).to_double();
      }
      ++h.scanned;
      double worst = 0;
      for (int n = 0; n < N && worst <= tol_d; ++n) {
        double d = std::fabs(r[n] - yd[n]);
        worst = std::max(worst, std::min(d, 1 - d));
      }
      if (worst <= tol_d && exact_hit(k)) {
        // Walk through the rest of this solution ball and keep its best
        // scanned point.
        h.k = k;
        BigReal best = achieved_distance(p, step * k);
        for (long j = k + 1; j <= k_max && j - k <= kPolishCap && exact_hit(j); ++j) {
          BigReal d = achieved_distance(p, step * j);
          if (d < best) {
            best = d;
            h.k = j;
          }
        }
        return h;
      }
      for (int n = 0; n < N; ++n) {
        r[n] += inc[n];
        if (r[n] >= 1) r[n] -= 1;
      }
    }
    return h;
  };

  const int workers = std::max(1, p.workers);
  long evaluations = 0;
  for (long base = 0; base < n_chunks; base += workers) {
    const long wave = std::min<long>(workers, n_chunks - base);
    std::vector<Hit> hits(static_cast<size_t>(wave));
    if (wave == 1) {
      hits[0] = scan_chunk(base);
    } else {
      std::vector<std::thread> pool;
      for (long i = 0; i < wave; ++i) {
        pool.emplace_back([&, i] { hits[static_cast<size_t>(i)] = scan_chunk(base + i); });
      }
      for (auto& t : pool) t.join();
    }
    for (const Hit& h : hits) {
      evaluations += h.scanned;
      if (h.k >= 0) {
        WindingSolution sol;
        sol.s = step * h.k;
        sol.achieved = achieved_distance(p, sol.s);
        sol.solver = "oracle";
        sol.evaluations = evaluations;
        sol.precision_bits = prec;
        return sol;
      }
    }
  }
  return std::nullopt;
}

namespace {

struct InductiveState {
  long cap;
  long evaluations = 0;
  std::vector<long> multipliers;
};

// Returns nullopt when the coefficients turn out to be dependent.
std::optional<BigReal> inductive_level(const std::vector<BigReal>& a, const std::vector<BigReal>& y,
                                       const BigReal& eps, InductiveState& st) {
  const size_t N = a.size();
  const Precision prec = a.back().precision();
  if (a.back().is_zero()) return std::nullopt;
  if (N == 1) return y[0] / a[0];
  const BigReal s0 = 1 / a.back();
  const size_t K = N - 1;
  std::vector<BigReal> inc(K), r(K, BigReal(0L, prec));
  for (size_t n = 0; n < K; ++n) {
    BigReal v = s0 * a[n];
    inc[n] = v - round(v);
  }
  const BigReal eps2 = eps * eps;
  BigReal best_norm2;
  long best_m = 0;
  long found = 0;
  for (long m = 1; m <= st.cap; ++m) {
    ++st.evaluations;
    BigReal norm2(0L, prec);
    for (size_t n = 0; n < K; ++n) {
      r[n] += inc[n];
      r[n] -= round(r[n]);
      norm2 += r[n] * r[n];
    }
    if (best_m == 0 || norm2 < best_norm2) {
      best_norm2 = norm2;
      best_m = m;
    }
    if (norm2 < eps2) {
      found = m;
      break;
    }
  }
  if (found == 0) {
    throw RecursionBudgetExceeded("near-return scan exceeded " + std::to_string(st.cap) +
                                  " iterations at dimension " + std::to_string(N) +
                                  "; best multiplier " + std::to_string(best_m) + " with distance " +
                                  sqrt(best_norm2).to_string(6));
  }
  st.multipliers.push_back(found);
  std::vector<BigReal> b(K), yh(K);
  const BigReal& c = y.back();
  for (size_t n = 0; n < K; ++n) {
    BigReal v = s0 * a[n] * found;
    b[n] = v - round(v);
    yh[n] = frac(BigReal(y[n] - c * s0 * a[n]));
  }
  std::optional<BigReal> t0 = inductive_level(b, yh, eps, st);
  if (!t0) return std::nullopt;
  const BigReal t = round(*t0);
  return s0 * t * found + c * s0;
}

}  // namespace

std::optional<WindingSolution> solve_inductive(const WindingProblem& p) {
  p.validate();
  const Precision prec = p.precision();
  const BigReal m(p.modulus, prec);
  std::vector<BigReal> an(p.a.size()), yn(p.y.size());
  for (size_t n = 0; n < p.a.size(); ++n) {
    an[n] = BigReal(p.a[n], prec) / m;
    yn[n] = BigReal(p.y[n], prec) / m;
  }
  const BigReal eps = p.tol / m / p.dim();
  InductiveState st{p.iteration_cap, 0, {}};
  std::optional<BigReal> s = inductive_level(an, yn, eps, st);
  if (!s) return std::nullopt;
  const long need = required_bits(abs(*s), p.a, p.modulus, p.tol);
  if (prec < need) {
    throw PrecisionError("inductive solution has |s| ~ 2^" + std::to_string(s->exponent2()) + " and needs " +
                         std::to_string(need) + " bits; working precision is " + std::to_string(prec));
  }
  WindingSolution sol;
  sol.s = *s;
  sol.achieved = achieved_distance(p, sol.s);
  sol.solver = "inductive";
  sol.evaluations = st.evaluations;
  sol.precision_bits = prec;
  sol.level_multipliers = st.multipliers;
  if (sol.achieved > p.tol) return std::nullopt;
  if (verify_doubled(p, sol.s) > p.tol) {
    throw PrecisionError("inductive solution does not survive re-verification at doubled precision");
  }
  return sol;
}

RelationScreen relation_screen(const std::vector<BigReal>& a, long bound) {
  const size_t n = a.size();
  Precision prec = 53;
  for (const BigReal& v : a) prec = std::max(prec, v.precision());
  const Precision q = 2 * prec + 64;
  const BigReal scale = BigReal::exp2i(static_cast<long>(prec) - 32, q);
  const size_t D = n + 1;
  // Basis rows [e_i | scale * a_i].
  std::vector<std::vector<BigReal>> b(n, std::vector<BigReal>(D, BigReal(0L, q)));
  for (size_t i = 0; i < n; ++i) {
    b[i][i] = BigReal(1L, q);
    b[i][n] = scale * BigReal(a[i], q);
  }
  auto dot = [&](const std::vector<BigReal>& u, const std::vector<BigReal>& v) {
    BigReal s(0L, q);
    for (size_t k = 0; k < D; ++k) s += u[k] * v[k];
    return s;
  };
  std::vector<std::vector<BigReal>> mu(n, std::vector<BigReal>(n, BigReal(0L, q)));
  std::vector<BigReal> B(n, BigReal(0L, q));
  {
    std::vector<std::vector<BigReal>> bs = b;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], bs[j]) / B[j];
        for (size_t k = 0; k < D; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      B[i] = dot(bs[i], bs[i]);
    }
  }
  const BigReal delta = BigReal::parse("0.99", q);
  auto reduce = [&](size_t k, size_t l) {
    BigReal r = round(mu[k][l]);
    if (r.is_zero()) return;
    for (size_t c = 0; c < D; ++c) b[k][c] -= r * b[l][c];
    for (size_t j = 0; j < l; ++j) mu[k][j] -= r * mu[l][j];
    mu[k][l] -= r;
  };
  size_t k = 1;
  long guard = 0;
  while (k < n && guard++ < 2000000) {
    reduce(k, k - 1);
    if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      const BigReal m = mu[k][k - 1];
      const BigReal Bn = B[k] + m * m * B[k - 1];
      std::swap(b[k], b[k - 1]);
      for (size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      mu[k][k - 1] = m * B[k - 1] / Bn;
      B[k] = B[k - 1] * B[k] / Bn;
      B[k - 1] = Bn;
      for (size_t i = k + 1; i < n; ++i) {
        const BigReal t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      k = std::max<size_t>(1, k - 1);
    } else {
      for (size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  RelationScreen out;
  const BigReal noise_unit = BigReal::exp2i(-(static_cast<long>(prec) - 8), prec);
  for (size_t i = 0; i < n; ++i) {
    std::vector<long> lambda(n);
    bool small = true, nonzero = false;
    for (size_t c = 0; c < n; ++c) {
      BigReal v = round(b[i][c]);
      if (abs(v) > bound) {
        small = false;
        break;
      }
      lambda[c] = v.to_long();
      nonzero |= lambda[c] != 0;
    }
    if (!small || !nonzero) continue;
    BigReal res(0L, prec), mag(0L, prec);
    for (size_t c = 0; c < n; ++c) {
      res += a[c] * lambda[c];
      mag += abs(a[c]) * std::labs(lambda[c]);
    }
    if (abs(res) <= mag * noise_unit) {
      out.relation_found = true;
      out.lambda = lambda;
      return out;
    }
  }
  if (n == 1 && a[0].is_zero()) {
    out.relation_found = true;
    out.lambda = {1};
  }
  return out;
}

PickW pick_w(const std::function<BigReal(const BigReal&)>& sigma1, const BigReal& c, const BigReal& r,
             int N, int screen_budget, std::uint64_t seed) {
  if (N < 1) throw SchemaError("pick_w needs N >= 1");
  const Precision prec = std::max(c.precision(), r.precision());
  // Golden-ratio conjugate keeps the default away from simple rationals.
  const BigReal xi = (sqrt(BigReal(5L, prec)) - 1) / 2;
  const BigReal base = r / (2 * N) * xi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PickW out;
  out.seed = seed;
  for (int attempt = 0; attempt < screen_budget; ++attempt) {
    BigReal w = base;
    if (attempt > 0) w = base * (1 - BigReal(u(rng), prec) / 2);
    out.attempts = attempt + 1;
    if (!(abs(w) * N < r)) continue;
    std::vector<BigReal> a;
    bool zero = false;
    for (int n = 1; n <= N; ++n) {
      a.push_back(sigma1(BigReal(c + w * n)));
      zero |= a.back().is_zero();
    }
    if (zero) continue;
    if (!relation_screen(a).relation_found) {
      out.w = w;
      out.a = std::move(a);
      return out;
    }
  }
  throw ScreenFailure("no w passed the integer-relation screen after " + std::to_string(screen_budget) +
                      " candidates (seed " + std::to_string(seed) + ")");
}

BigReal parse_real(const std::string& text, Precision prec) {
  if (text.rfind("sqrt(", 0) == 0 && text.size() > 6 && text.back() == ')') {
    return sqrt(BigReal::parse(text.substr(5, text.size() - 6), prec));
  }
  return BigReal::parse(text, prec);
}

json to_json(const WindingProblem& p) {
  json j;
  j["format_version"] = 1;
  j["precision_bits"] = p.precision();
  json a = json::array(), y = json::array();
  for (const BigReal& v : p.a) a.push_back(v.to_string());
  for (const BigReal& v : p.y) y.push_back(v.to_string());
  j["a"] = a;
  j["y"] = y;
  j["tol"] = p.tol.to_string();
  j["modulus"] = p.modulus.to_string();
  j["s_max"] = p.s_max.to_string();
  j["step"] = p.step.to_string();
  j["iteration_cap"] = p.iteration_cap;
  return j;
}

WindingProblem problem_from_json(const json& j, Precision prec_override) {
  if (!j.contains("format_version") || j["format_version"] != 1) {
    throw SchemaError("winding problem: missing or unsupported format_version");
  }
  try {
    const Precision prec = prec_override > 0 ? prec_override : j.value("precision_bits", Precision{256});
    auto num = [&](const json& v) {
      if (v.is_string()) return parse_real(v.get<std::string>(), prec);
      if (v.is_number_integer()) return BigReal(v.get<long>(), prec);
      throw SchemaError("winding problem values must be decimal strings");
    };
    WindingProblem p;
    for (const json& v : j.at("a")) p.a.push_back(num(v));
    for (const json& v : j.at("y")) p.y.push_back(num(v));
    p.tol = num(j.at("tol"));
    if (j.contains("modulus")) p.modulus = num(j["modulus"]);
    if (j.contains("s_max")) p.s_max = num(j["s_max"]);
    p.step = j.contains("step") ? num(j["step"]) : BigReal(0L, prec);
    p.iteration_cap = j.value("iteration_cap", 1000000L);
    p.validate();
    return p;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("winding problem: ") + e.what());
  }
}

json to_json(const WindingSolution& s) {
  json j;
  j["format_version"] = 1;
  j["solver"] = s.solver;
  j["s"] = s.s.to_string();
  j["achieved"] = s.achieved.to_string(17);
  j["evaluations"] = s.evaluations;
  j["precision_bits"] = s.precision_bits;
  if (!s.level_multipliers.empty()) j["level_multipliers"] = s.level_multipliers;
  return j;
}

}  // namespace superx
