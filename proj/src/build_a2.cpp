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

#include "superx/build_a2.hpp"

#include <chrono>
#include <random>

#include "superx/special.hpp"
#include "superx/winding.hpp"

namespace superx {

namespace {

void check_M(int M) {
  if (M < 4 || M % 2 != 0) throw SchemaError("A2 needs an even M >= 4");
}

std::string qname(int q) { return q < 0 ? "qm" + std::to_string(-q) : "q" + std::to_string(q); }

}  // namespace

std::vector<Segment> layout(int M, int q, Precision prec) {
  check_M(M);
  std::vector<Segment> out;
  // M x - q/2 in [2k, 2k + 1]  <=>  x in [(4k + q) / 2M, (4k + q + 2) / 2M].
  for (long k = -1;; ++k) {
    const long a = 4 * k + q, b = 4 * k + q + 2;
    if (a >= 2L * M) break;
    if (b <= 0) continue;
    Segment s;
    s.q = q;
    s.p = static_cast<int>(k + 1);
    s.lo = max(BigReal(0L, prec), BigReal(BigReal(a, prec) / (2 * M)));
    s.hi = min(BigReal(1L, prec), BigReal(BigReal(b, prec) / (2 * M)));
    out.push_back(s);
  }
  return out;
}

int code_count(int M) {
  int n = 0;
  for (int q : kA2Shifts) {
    for (const Segment& s : layout(M, q, 64)) n = std::max(n, s.p);
  }
  return n;
}

BigReal code_center(int M, int p, Precision prec) {
  // Mean of the four shifted segment centers (4(p-1) + q + 1) / 2M.
  BigReal c = (BigReal(4L * (p - 1), prec) + BigReal(1.5, prec)) / (2 * M);
  return min(BigReal(1L, prec), max(BigReal(0L, prec), c));
}

BigReal G_eval(int M, int q, const BigReal& x) {
  const BigReal half = BigReal::exp2i(-1, x.precision());
  return nu(BigReal(x * M - half * q + half));
}

BigReal psi_eval(int M, int q, const BigReal& x) {
  return psi(BigReal(x * M - BigReal::exp2i(-1, x.precision()) * q));
}

BigReal v_eval(const A2Params& p, int q, const BigReal& x) {
  const BigReal g = G_eval(p.M, q, x);
  return p.amp * theta(BigReal(p.s * sin(BigReal(p.w * g))));
}

BigReal a2_closed_form(const A2Params& p, const BigReal& x) {
  BigReal acc(0L, x.precision());
  for (int q : kA2Shifts) acc += v_eval(p, q, x) * psi_eval(p.M, q, x);
  return acc * p.out_scale;
}

NetGraph a2_network(const A2Params& p, Precision prec) {
  check_M(p.M);
  GraphBuilder g(1, prec);
  const BigReal pi = BigReal::pi(prec);
  const BigReal inv_pi = 1 / pi;
  const BigReal half = BigReal::exp2i(-1, prec);
  const Interval unit{BigReal(-1L, prec), BigReal(1L, prec)};
  const Activation sn(ActKind::Sin), as(ActKind::Arcsin);
  MultiplierParams mp{p.mult.act, g.num(p.mult.x0), g.num(p.mult.delta), g.num(p.mult.Cx),
                      g.num(p.mult.Cy)};
  check_multiplier(mp);

  LinearForm out = g.constant(BigReal(0L, prec));
  for (int q : kA2Shifts) {
    const std::string l = "a2." + qname(q);
    const LinearForm t1 = g.input(0) * g.num(p.M) - half * q;
    // theta(t) = asin(sin(pi t)) / pi.
    LinearForm a1 = g.neuron(as, g.neuron(sn, t1 * pi, l + ".th1.sin"), l + ".th1.asin", unit);
    LinearForm th1 = a1 * inv_pi;
    // psi = theta1 + 1/2 + theta(theta1 - 1/2).
    LinearForm a2 = g.neuron(as, g.neuron(sn, (th1 - half) * pi, l + ".psi.sin"), l + ".psi.asin", unit);
    LinearForm psi_q = th1 + half + a2 * inv_pi;
    // G = nu(t1 + 1/2).
    const LinearForm t3 = t1 + half;
    LinearForm a3 = g.neuron(as, g.neuron(sn, t3 * pi, l + ".G.sin"), l + ".G.asin", unit);
    LinearForm G = t3 + a3 * inv_pi;
    // v = amp theta(s sin(w G)).
    LinearForm s4 = g.neuron(sn, G * g.num(p.w), l + ".v.code");
    LinearForm a5 = g.neuron(as, g.neuron(sn, s4 * BigReal(pi * p.s), l + ".v.wind"), l + ".v.asin", unit);
    LinearForm v = a5 * BigReal(g.num(p.amp) * inv_pi);
    out += multiply_forms(g, mp, v, psi_q, l + ".prod", false) * g.num(p.out_scale);
  }
  NetGraph raw = g.finish(out, "a2.out");

  // Declare the propagated pre-activation ranges.
  NodeRanges rr = propagate_ranges(raw, {Interval{BigReal(0L, prec), BigReal(1L, prec)}});
  std::vector<NodeSpec> nodes = raw.nodes();
  for (NodeSpec& n : nodes) {
    if (n.kind != NodeKind::Hidden) continue;
    Interval r = rr.pre[static_cast<size_t>(n.id)];
    if (n.act.kind == ActKind::Arcsin) r = Interval{max(r.lo, unit.lo), min(r.hi, unit.hi)};
    n.range = r;
  }
  return NetGraph(raw.input_count(), std::move(nodes), prec);
}

namespace {

std::vector<BigReal> code_coefficients(const BigReal& w, int N) {
  std::vector<BigReal> a;
  for (int p = 1; p <= N; ++p) a.push_back(sin(BigReal(w * (2L * p - 1))));
  return a;
}

}  // namespace

A2Build build_a2(const Target& f, const A2Options& opt) {
  const auto t_start = std::chrono::steady_clock::now();
  if (f.d != 1) throw SchemaError("A2 is defined for d = 1 only");
  check_M(opt.M);
  if (!(opt.tol > 0) || !(opt.tol < BigReal::exp2i(-2, 64))) throw SchemaError("A2 needs 0 < tol < 1/4");
  Precision prec = opt.precision;
  const int M = opt.M;
  const int N = code_count(M);

  // Both survive precision escalations, so a retry resumes at the same w.
  double w_target = opt.w_start;
  int attempts = 0;
  for (;;) {
    const BigReal tol(opt.tol, prec);
    const BigReal fmax = BigReal(f.max_abs(), prec);
    A2Params p;
    p.M = M;
    p.amp = 2 * fmax;
    p.out_scale = BigReal(fmax.is_zero() ? 0L : 1L, prec);
    const BigReal cx = fmax.is_zero() ? BigReal(1L, prec) : fmax;
    const BigReal e_sq = tol / 10;
    p.mult = MultiplierParams{ActKind::Sin, BigReal(-BigReal::pi(prec) / 2),
                              delta_for_square_error(ActKind::Sin, e_sq), cx, BigReal(1L, prec)};
    const BigReal mult_err = multiplier_error_bound(p.mult);

    std::vector<BigReal> fvals;
    for (int k = 1; k <= N; ++k) {
      fvals.push_back(f.at(code_center(M, k, prec)));
      if (fmax.is_zero()) {
        p.z.push_back(BigReal(0L, prec));
        continue;
      }
      // theta(z) = z on [-1/2, 1/2]; |f| = max|f| lands on the endpoint.
      BigReal z = fvals.back() / p.amp;
      if (z.sign() < 0) z += 2;
      p.z.push_back(z);
    }

    BuildReport rep;
    rep.family = "A2";
    rep.d = 1;
    rep.M = M;
    rep.tol = tol;
    rep.seed = opt.seed;
    rep.precision_bits = prec;
    nlohmann::json extra;
    extra["target"] = f.spec;
    extra["codes"] = N;
    extra["amp"] = p.amp.to_string(17);
    extra["mult_delta"] = p.mult.delta.to_string(17);
    extra["mult_err_est"] = mult_err.to_string(17);

    try {
      if (fmax.is_zero()) {
        p.w = BigReal(opt.w_start, prec);
        p.s = BigReal(0L, prec);
        rep.achieved = BigReal(0L, prec);
        extra["solver"] = "none";
      } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> jitter(0.0, 1.0);
        std::optional<WindingSolution> sol;
        for (;;) {
          ++attempts;
          // Screened candidate near w_target.
          BigReal w;
          bool screened = false;
          for (int c = 0; c < 8 && !screened; ++c) {
            const double u = c == 0 ? 0.0 : jitter(rng);
            w = BigReal(w_target * (1 - u / 2), prec);
            screened = !relation_screen(code_coefficients(w, N)).relation_found;
          }
          if (!screened) throw ScreenFailure("no screened w near " + std::to_string(w_target));
          p.w = w;
          WindingProblem wp;
          wp.a = code_coefficients(w, N);
          wp.y = p.z;
          wp.tol = tol;
          wp.modulus = BigReal(2L, prec);
          wp.iteration_cap = opt.iteration_cap;
          wp.workers = opt.workers;
          wp.step = BigReal(0L, prec);
          wp.s_max = BigReal(100000L, prec);
          try {
            sol = solve_inductive(wp);
          } catch (const RecursionBudgetExceeded&) {
            if (attempts >= opt.w_retries) {
              // The scan also fails when sub-problem coefficients run out of
              // bits; more precision restarts the w schedule.
              if (!opt.auto_precision || prec >= 8192) throw;
              w_target = opt.w_start;
              attempts = 0;
              throw PrecisionError("near-return scans failed for every w at " + std::to_string(prec) + " bits");
            }
            w_target /= 10;
            continue;
          }
          if (!sol) throw SolverFailure("winding problem has no solution within the search bounds");
          break;
        }
        p.s = sol->s;
        rep.achieved = sol->achieved;
        extra["solver"] = sol->solver;
        extra["evaluations"] = sol->evaluations;
        extra["level_multipliers"] = sol->level_multipliers;
        extra["w_attempts"] = attempts;
      }
      rep.s = p.s;
      rep.w = p.w;

      A2Build out{a2_network(p, prec), p, {}};
      // v_q against the shared code targets, at every segment midpoint.
      BigReal worst(0L, prec);
      for (int q : kA2Shifts) {
        for (const Segment& s : layout(M, q, prec)) {
          const BigReal mid = (s.lo + s.hi) / 2;
          const BigReal v = v_eval(p, q, mid) * p.out_scale;
          worst = max(worst, abs(v - fvals[static_cast<size_t>(s.p - 1)]));
        }
      }
      extra["max_target_error"] = worst.to_string(17);
      extra["target_error_bound"] = BigReal(p.amp * tol).to_string(17);
      rep.cert_error_bound = f.omega(BigReal(BigReal(2L, prec) / M)) + p.amp * tol + 4 * mult_err;
      const auto pts = sample_points(1, opt.samples, opt.seed, prec, 0, BigReal(0L, prec));
      SupError se = measure_sup_error(out.net, f, pts, opt.workers);
      rep.measured_sup_error = se.sup;
      rep.samples = se.samples;
      rep.extra = extra;
      rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
      out.report = rep;
      return out;
    } catch (const PrecisionError&) {
      if (!opt.auto_precision || prec >= 8192) throw;
      prec *= 2;
    } catch (const ScreenFailure&) {
      // Tiny w leaves near-relations the screen cannot rule out at this precision.
      if (!opt.auto_precision || prec >= 8192) throw;
      prec *= 2;
    }
  }
}

}  // namespace superx
