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

#include "superx/build_a1.hpp"

#include <chrono>
#include <cmath>

namespace superx {

Sigma1 Sigma1::sin_on_unit(Precision prec) { return {ActKind::Sin, BigReal(0L, prec), BigReal(1L, prec)}; }

Sigma1 Sigma1::exp_on_unit(Precision prec) { return {ActKind::Exp, BigReal(0L, prec), BigReal(1L, prec)}; }

Sigma1 Sigma1::parse(const std::string& name, Precision prec) {
  if (name == "sin") return sin_on_unit(prec);
  if (name == "exp") return exp_on_unit(prec);
  throw SchemaError("sigma1 must be 'sin' or 'exp'");
}

std::string Sigma1::name() const { return Activation(kind).name(); }

long GridSpec::cells() const {
  long n = 1;
  for (int k = 0; k < d; ++k) n *= (M + 1);
  return n;
}

long grid_index(const GridSpec& g, const BigVec& x) {
  long n = 1, scale = 1;
  for (int k = 0; k < g.d; ++k) {
    n += scale * floor(BigReal(x(k) * g.M)).to_long();
    scale *= (g.M + 1);
  }
  return n;
}

std::vector<long> cell_digits(const GridSpec& g, long n) {
  std::vector<long> m(static_cast<size_t>(g.d));
  long r = n - 1;
  for (int k = 0; k < g.d; ++k) {
    m[static_cast<size_t>(k)] = r % (g.M + 1);
    r /= (g.M + 1);
  }
  return m;
}

BigVec cell_center(const GridSpec& g, long n, Precision prec) {
  BigVec x(g.d);
  auto m = cell_digits(g, n);
  for (int k = 0; k < g.d; ++k) {
    const long mk = m[static_cast<size_t>(k)];
    x(k) = mk < g.M ? BigReal((BigReal(mk, prec) + BigReal::exp2i(-1, prec)) / g.M) : BigReal(1L, prec);
  }
  return x;
}

BigReal u_eval(const A1Params& p, long n) {
  const BigReal z = p.sigma1(BigReal(p.sigma1.center() + p.w * n));
  return (p.B - p.A) * frac(BigReal(p.s * z)) + p.A;
}

NetGraph a1_network(const A1Params& p, Precision prec) {
  const int d = p.grid.d;
  GraphBuilder g(d, prec);
  std::vector<LinearForm> cells;
  for (int k = 0; k < d; ++k) {
    cells.push_back(g.neuron(ActKind::Floor, g.input(k) * g.num(p.grid.M), "a1.cell" + std::to_string(k)));
  }
  LinearForm pre = g.constant(p.sigma1.center() + p.w);
  BigReal scale = g.num(p.w);
  for (int k = 0; k < d; ++k) {
    pre += cells[static_cast<size_t>(k)] * scale;
    scale *= (p.grid.M + 1);
  }
  LinearForm z = g.neuron(Activation(p.sigma1.kind), pre, "a1.sigma1");
  LinearForm wind = g.neuron(ActKind::Floor, z * g.num(p.s), "a1.wind");
  const BigReal span = g.num(p.B - p.A);
  return g.finish(z * BigReal(span * p.s) - wind * span + g.num(p.A), "a1.out");
}

namespace {

// sigma1 values at every cell, computed by the network's own node.
std::vector<BigReal> network_coefficients(const A1Params& p, Precision prec) {
  NetGraph net = a1_network(p, prec);
  const int zid = 2 * p.grid.d;
  std::vector<BigReal> a;
  for (long n = 1; n <= p.grid.cells(); ++n) {
    a.push_back(evaluate_all(net, cell_center(p.grid, n, prec))[static_cast<size_t>(zid)]);
  }
  return a;
}

}  // namespace

A1Build build_a1(const Target& f, const A1Options& opt) {
  const auto t_start = std::chrono::steady_clock::now();
  if (f.d != opt.grid.d) throw SchemaError("target dimension does not match the grid");
  if (opt.grid.M < 1 || opt.grid.d < 1) throw SchemaError("grid needs d >= 1 and M >= 1");
  if (!(opt.tol > 0) || !(opt.tol < BigReal::exp2i(-2, 64))) throw SchemaError("A1 needs 0 < tol < 1/4");
  Precision prec = opt.precision;
  const GridSpec& g = opt.grid;
  const long N = g.cells();

  // Both survive precision escalations, so a retry resumes at the same w.
  double w_target = opt.w_start;
  int attempts = 0;
  for (;;) {
    const BigReal tol(opt.tol, prec);
    A1Params p;
    p.grid = g;
    p.sigma1 = Sigma1{opt.sigma1.kind, BigReal(opt.sigma1.alpha, prec), BigReal(opt.sigma1.beta, prec)};
    const BigReal A0(f.lo, prec), B0(f.hi, prec);
    const BigReal kappa = (B0 - A0) * tol;
    p.A = A0 - kappa;
    p.B = B0 + kappa;
    std::vector<BigReal> fvals;
    for (long n = 1; n <= N; ++n) fvals.push_back(f(cell_center(g, n, prec)));
    const BigReal span = p.B - p.A;
    for (const BigReal& v : fvals) {
      p.targets.push_back(span.is_zero() ? BigReal(0L, prec) : BigReal((v - p.A) / span));
    }
    const BigReal c = p.sigma1.center();
    const BigReal half_width = (p.sigma1.beta - p.sigma1.alpha) / 2;
    const BigReal xi = (sqrt(BigReal(5L, prec)) - 1) / 2;

    BuildReport rep;
    rep.family = "A1";
    rep.d = g.d;
    rep.M = g.M;
    rep.tol = tol;
    rep.seed = opt.seed;
    rep.precision_bits = prec;
    nlohmann::json extra;
    extra["target"] = f.spec;
    extra["sigma1"] = p.sigma1.name();
    extra["alpha"] = p.sigma1.alpha.to_string();
    extra["beta"] = p.sigma1.beta.to_string();
    extra["A"] = A0.to_string(17);
    extra["B"] = B0.to_string(17);
    extra["n_cells"] = N;
    extra["sample_face_offset"] = "2^-20";

    try {
      std::optional<WindingSolution> sol;
      if (span.is_zero()) {
        p.w = BigReal(half_width / (4 * N) * xi);
        p.s = BigReal(0L, prec);
        extra["solver"] = "none";
        rep.achieved = BigReal(0L, prec);
      } else {
        for (;;) {
          ++attempts;
          const BigReal r = BigReal(w_target, prec) * (2 * N) / xi;
          if (!(r < half_width)) {
            // Keeps sigma1's argument c + w n inside (alpha, beta).
            w_target /= 10;
            --attempts;
            continue;
          }
          PickW pw = pick_w(p.sigma1, c, r, static_cast<int>(N), 8, opt.seed);
          p.w = pw.w;
          p.s = BigReal(0L, prec);
          WindingProblem wp;
          wp.a = network_coefficients(p, prec);
          wp.y = p.targets;
          wp.tol = tol / (1 + 2 * tol);
          wp.modulus = BigReal(1L, prec);
          wp.iteration_cap = opt.iteration_cap;
          wp.workers = opt.workers;
          wp.step = BigReal(0L, prec);
          wp.s_max = opt.s_max.is_zero() ? BigReal(100000L, prec) : BigReal(opt.s_max, prec);
          try {
            sol = opt.solver == "oracle" ? solve_oracle(wp) : solve_inductive(wp);
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

      A1Build out{a1_network(p, prec), p, {}};
      // Target condition checked on the network itself, cell by cell.
      BigReal worst_cell(0L, prec);
      for (long n = 1; n <= N; ++n) {
        const BigReal v = evaluate(out.net, cell_center(g, n, prec));
        worst_cell = max(worst_cell, abs(v - fvals[static_cast<size_t>(n - 1)]));
      }
      extra["max_target_error"] = worst_cell.to_string(17);
      extra["target_error_bound"] = BigReal((B0 - A0) * tol).to_string(17);
      const BigReal diam = sqrt(BigReal(static_cast<long>(g.d), prec)) / g.M;
      rep.cert_error_bound = f.omega(diam) + (B0 - A0) * tol;
      const auto pts = sample_points(g.d, opt.samples, opt.seed, prec, g.M, BigReal::exp2i(-20, prec));
      SupError se = measure_sup_error(out.net, f, pts, opt.workers);
      rep.measured_sup_error = se.sup;
      rep.samples = se.samples;
      rep.extra = extra;
      rep.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
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
