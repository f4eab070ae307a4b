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

#include "superx/build_a3.hpp"

#include <chrono>
#include <cmath>

#include "superx/multiplier.hpp"
#include "superx/special.hpp"

namespace superx {

namespace {

constexpr long kSeriesCutoff = -16;

// sup |S(u) - u^2| for the sigma3 square gadget; series upper bound for
// small steps, where the closed form cancels.
BigReal sq_err3(const BigReal& delta) {
  if (delta < BigReal::exp2i(kSeriesCutoff, delta.precision())) return delta * delta / 8;
  return square_error(ActKind::Sigma3, delta);
}

// sup |S'(u) - 2u| for the sigma3 square gadget.
BigReal slope_err3(const BigReal& delta) {
  if (delta < BigReal::exp2i(kSeriesCutoff, delta.precision())) return delta * delta * BigReal(0.4, delta.precision());
  return square_slope_error(ActKind::Sigma3, delta);
}

// Same arithmetic as square_form with act = sigma3, x0 = 0.
BigReal square3(const BigReal& u, const BigReal& delta) {
  const BigReal pi = BigReal::pi(u.precision());
  const BigReal zero(0L, u.precision());
  return (sigma3(BigReal(delta * u)) + sigma3(BigReal(-(delta * u))) - 2 * sigma3(zero)) * pi /
         (delta * delta);
}

BigReal widen_rel(const BigReal& v, Precision p) { return abs(v) * BigReal::exp2i(-(static_cast<long>(p) - 8), p); }

// x^2 sigma3'(x) <= 4 + 2/pi on x >= 1.
BigReal right_slope_const(Precision p) { return 4 + 2 / BigReal::pi(p); }

}  // namespace

BigReal omega_asin(const BigReal& h) {
  const Precision p = h.precision();
  if (h >= 2) return BigReal::pi(p);
  if (!(h > 0)) return BigReal(0L, p);
  // acos(1 - h), written without the cancellation.
  return 2 * asin(sqrt(BigReal(h / 2)));
}

BigReal arcsin_via_sigma3(const BigReal& x, const BigReal& delta) {
  if (!(abs(x) <= 1)) throw DomainError("arcsin_via_sigma3 needs |x| <= 1", -1);
  if (!(delta > 0) || !(delta <= BigReal::exp2i(-1, delta.precision()))) {
    throw SchemaError("arcsin_via_sigma3 needs 0 < delta <= 1/2");
  }
  const BigReal pi = BigReal::pi(std::max(x.precision(), delta.precision()));
  BigReal q = x <= 1 - 2 * delta ? BigReal((sigma3(BigReal(x + delta)) - sigma3(x)) / delta)
                                  : BigReal((sigma3(x) - sigma3(BigReal(x - delta))) / delta);
  return pi * q - 3 * pi / 2;
}

BigReal arcsin_sigma3_bound(const BigReal& delta) { return omega_asin(delta); }

BigReal ArcsinGadget::eval(const BigReal& z) const {
  const BigReal pi = BigReal::pi(std::max(z.precision(), h.precision()));
  return pi * (sigma3(BigReal(z + h)) - sigma3(BigReal(z - h))) / (2 * h) - 3 * pi / 2;
}

BigReal ArcsinGadget::local_bound() const { return omega_asin(h) + 16 * BigReal::pi(h.precision()) * h; }

BigReal ArcsinGadget::lipschitz_bound() const {
  return (omega_asin(BigReal(2 * h)) + 32 * BigReal::pi(h.precision()) * h) / (2 * h);
}

SinGadget SinGadget::make(const Interval& range, const BigReal& delta_s, const BigReal& delta_m,
                          std::optional<long> shift) {
  const Precision p = std::max({range.lo.precision(), range.hi.precision(), delta_s.precision(), Precision{64}});
  if (!(range.lo <= range.hi)) throw SchemaError("sin gadget range is empty");
  if (!(delta_s > 0) || !(delta_s <= 1) || !(delta_m > 0) || !(delta_m <= 1)) {
    throw SchemaError("sin gadget steps must lie in (0, 1]");
  }
  SinGadget g;
  g.range = range;
  g.delta_s = BigReal(delta_s, p);
  g.delta_m = BigReal(delta_m, p);
  const BigReal pi = BigReal::pi(p);
  const BigReal x0 = BigReal(range.lo, p) / pi;
  g.shift = shift ? BigReal(*shift, p) : ceil(BigReal((BigReal(1.5, p) - x0) / 2));
  BigReal lo = x0 + 2 * g.shift, hi = BigReal(range.hi, p) / pi + 2 * g.shift;
  g.x_c = (lo + hi) / 2;
  g.r = (hi - lo) / 2 + widen_rel(hi, p);
  if (g.r.is_zero()) g.r = BigReal::exp2i(-20, p);
  g.x_lo = g.x_c - g.r;
  g.x_hi = g.x_c + g.r;
  if (!(g.x_lo >= 1)) throw ShiftError("shifted sin argument falls below 1");

  g.e_X = g.r * g.r * sq_err3(g.delta_s);
  const BigReal xl2 = g.x_lo * g.x_lo, xh2 = g.x_hi * g.x_hi;
  g.X_c = (xl2 + xh2) / 2;
  g.R_x = (xh2 - xl2) / 2 + g.e_X + widen_rel(xh2, p);
  const BigReal y_lo = sigma3(g.x_lo) - 7, y_hi = sigma3(g.x_hi) - 7;
  g.Y_c = (y_lo + y_hi) / 2;
  g.R_y = (y_hi - y_lo) / 2 + BigReal::exp2i(-(static_cast<long>(p) - 8), p) * 8;
  g.Y_abs = max(abs(y_lo), abs(y_hi));
  return g;
}

BigReal SinGadget::eval(const BigReal& t) const {
  const Precision p = std::max(t.precision(), x_c.precision());
  const BigReal pi = BigReal::pi(p);
  const BigReal x = t / pi + 2 * shift;
  const BigReal sq = x_c * x_c + 2 * x_c * (x - x_c) + r * r * square3(BigReal((x - x_c) / r), delta_s);
  const BigReal y = sigma3(x) - 7;
  const BigReal a = (sq - X_c) / R_x, b = (y - Y_c) / R_y;
  const BigReal mu = square3(BigReal((a + b) / 2), delta_m) - square3(BigReal((a - b) / 2), delta_m);
  const BigReal prod = X_c * Y_c + X_c * (y - Y_c) + Y_c * (sq - X_c) + R_x * R_y * mu;
  return pi * prod + 3 * pi * x;
}

BigReal SinGadget::local_bound() const {
  const BigReal pi = BigReal::pi(x_c.precision());
  return pi * (R_x * R_y * sq_err3(delta_m) + e_X * Y_abs);
}

BigReal SinGadget::lipschitz_bound() const {
  const Precision p = x_c.precision();
  const BigReal es = slope_err3(delta_s), em = slope_err3(delta_m);
  return 1 + Y_abs * r * es + R_y * em * (2 * x_hi + r * es) +
         (e_X + R_x * em) * right_slope_const(p) / (x_lo * x_lo);
}

BigReal sin_via_sigma3(const BigReal& t, const SinGadget& g) { return g.eval(t); }

nlohmann::json RewriteReport::to_json() const {
  nlohmann::json j = {{"format_version", 1},
                      {"target_budget", target_budget.to_string(17)},
                      {"gadget_total", gadget_total.to_string(17)},
                      {"rounding_total", rounding_total.to_string(17)},
                      {"total", total.to_string(17)},
                      {"precision_bits", precision_bits},
                      {"iterations", iterations},
                      {"source_nodes", source_nodes},
                      {"rewritten_nodes", rewritten_nodes}};
  nlohmann::json arr = nlohmann::json::array();
  for (const NodeBudget& n : nodes) {
    arr.push_back({{"source_node", n.source_node},
                   {"label", n.label},
                   {"gadget", n.gadget},
                   {"params", n.params},
                   {"local", n.local.to_string(6)},
                   {"lipschitz", n.lipschitz.to_string(6)},
                   {"sensitivity", n.sensitivity.to_string(6)},
                   {"budget", n.budget.to_string(6)},
                   {"rounding", n.rounding.to_string(6)}});
  }
  j["nodes"] = arr;
  return j;
}

namespace {

enum class Plan { Input, Output, Constant, Identity, Sin, Arcsin };

struct NodePlan {
  Plan kind = Plan::Input;
  BigReal h;
  BigReal delta_s;
  BigReal delta_m;
  SinGadget sin;
  BigReal local, lip, sens, e_in, err;
};

constexpr long kSigma3Slope = 5;  // bound on the sigma3 slope over [-3/2, 3/2]
constexpr long kUlps = 128;           // 16 ulps of a value bounded by 7, with room

struct Emitter {
  GraphBuilder g;
  std::vector<BigReal> mags;

  Emitter(int d, Precision p, const std::vector<Interval>& inputs) : g(d, p) {
    for (const Interval& r : inputs) mags.push_back(BigReal(r.mag(), p));
  }

  LinearForm neuron(ActKind act, const LinearForm& pre, const std::string& label) {
    LinearForm f = g.neuron(Activation(act), pre, label);
    sync();
    return f;
  }
  // sigma3 values lie in (0, 7).
  void sync() { mags.resize(static_cast<size_t>(g.last_id() + 1), BigReal(7L, g.precision())); }

  BigReal mag(const LinearForm& f) const {
    BigReal m = abs(f.constant);
    for (const auto& [id, c] : f.terms) m += abs(c) * mags[static_cast<size_t>(id)];
    return m;
  }
};

LinearForm emit_arcsin(Emitter& e, const BigReal& h0, const LinearForm& pre, const std::string& label,
                       BigReal& kappa) {
  GraphBuilder& g = e.g;
  const BigReal pi = BigReal::pi(g.precision()), h = g.num(h0);
  LinearForm up = e.neuron(ActKind::Sigma3, pre + h, label + ".p");
  LinearForm dn = e.neuron(ActKind::Sigma3, pre - h, label + ".m");
  const BigReal c = pi / (2 * h);
  kappa = 2 * c * (BigReal(kUlps, g.precision()) + 4 * kSigma3Slope * (e.mag(pre) + h));
  return (up - dn) * c - 3 * pi / 2;
}

LinearForm emit_sin(Emitter& e, const SinGadget& sg, const LinearForm& t, const std::string& label,
                    BigReal& kappa) {
  GraphBuilder& g = e.g;
  const Precision p = g.precision();
  const BigReal pi = BigReal::pi(p), ulps(kUlps, p);
  const BigReal xc = g.num(sg.x_c), r = g.num(sg.r), Xc = g.num(sg.X_c), Rx = g.num(sg.R_x);
  const BigReal Yc = g.num(sg.Y_c), Ry = g.num(sg.R_y);
  const LinearForm x = t * BigReal(1 / pi) + g.num(BigReal(2 * sg.shift));
  const LinearForm u = (x - xc) * BigReal(1 / r);
  LinearForm s = square_form(g, ActKind::Sigma3, g.num(0), g.num(sg.delta_s), u, label + ".sq", true);
  e.sync();
  const LinearForm sq = g.constant(xc * xc) + (x - xc) * BigReal(2 * xc) + s * BigReal(r * r);
  const LinearForm z = e.neuron(ActKind::Sigma3, x, label + ".z");
  const LinearForm y = z - g.num(7);
  const LinearForm a = (sq - Xc) * BigReal(1 / Rx), b = (y - Yc) * BigReal(1 / Ry);
  MultiplierParams mp{ActKind::Sigma3, g.num(0), g.num(sg.delta_m), g.num(1), g.num(1)};
  const LinearForm mu = multiply_forms(g, mp, a, b, label + ".mul", true);
  e.sync();
  const LinearForm prod = g.constant(Xc * Yc) + (y - Yc) * Xc + (sq - Xc) * Yc + mu * BigReal(Rx * Ry);

  // Internal rounding, per unit roundoff, weighted by each neuron's
  // influence on the gadget output.
  const BigReal em = slope_err3(sg.delta_m);
  const BigReal infl_sq = pi * (sg.Y_abs + sg.R_y * em) * sg.r * sg.r * pi / (sg.delta_s * sg.delta_s);
  const BigReal infl_mu = pi * sg.R_x * sg.R_y * pi / (sg.delta_m * sg.delta_m);
  const BigReal infl_z = pi * (sg.X_c + sg.R_x + sg.R_x * em);
  const BigReal z_pre = pi * right_slope_const(p) * (1 + (sg.e_X + sg.R_x * em) / (sg.x_lo * sg.x_lo));
  kappa = 2 * infl_sq * (ulps + 4 * kSigma3Slope * sg.delta_s * e.mag(u)) + infl_z * ulps +
          z_pre * 4 * e.mag(x) + 4 * infl_mu * (ulps + 2 * kSigma3Slope * sg.delta_m * (e.mag(a) + e.mag(b)));
  return prod * pi + x * BigReal(3 * pi);
}

struct Emitted {
  NetGraph net;
  std::vector<BigReal> kappa;
  BigReal out_kappa;
};

Emitted emit_all(const NetGraph& src, const std::vector<NodePlan>& plan, Precision p,
                 const std::vector<Interval>& inputs) {
  Emitter e(src.input_count(), p, inputs);
  std::vector<LinearForm> forms(src.size());
  Emitted out;
  out.kappa.assign(src.size(), BigReal(0L, p));
  for (int id : src.topo_order()) {
    const NodeSpec& n = src.node(id);
    const NodePlan& pl = plan[static_cast<size_t>(id)];
    if (pl.kind == Plan::Input) {
      forms[static_cast<size_t>(id)] = e.g.input(id);
      continue;
    }
    LinearForm pre = e.g.constant(n.bias);
    for (const Edge& ed : n.in_edges) pre += forms[static_cast<size_t>(ed.src)] * e.g.num(ed.weight);
    BigReal& kap = out.kappa[static_cast<size_t>(id)];
    switch (pl.kind) {
      case Plan::Constant:
        forms[static_cast<size_t>(id)] = e.g.constant(apply_activation(n.act, e.g.num(n.bias)));
        break;
      case Plan::Identity:
        forms[static_cast<size_t>(id)] = pre;
        break;
      case Plan::Arcsin:
        forms[static_cast<size_t>(id)] = emit_arcsin(e, pl.h, pre, n.label + ".arcsin", kap);
        break;
      case Plan::Sin:
        forms[static_cast<size_t>(id)] = emit_sin(e, pl.sin, pre, n.label + ".sin", kap);
        break;
      case Plan::Output:
        out.out_kappa = 4 * e.mag(pre);
        out.net = e.g.finish(pre, n.label);
        break;
      case Plan::Input:
        break;
    }
  }
  return out;
}

BigReal huge(Precision p) { return BigReal::exp2i(4096, p); }

}  // namespace

RewriteResult rewrite_a2_to_a3(const NetGraph& src, const RewriteParams& rp) {
  const Precision pw = std::max<Precision>(src.precision_bits(), 256);
  const BigReal T(rp.target_budget, pw);
  if (!(T > 0)) throw SchemaError("rewrite target budget must be positive");
  std::vector<Interval> inputs = rp.inputs;
  if (inputs.empty()) inputs.assign(static_cast<size_t>(src.input_count()), Interval{BigReal(0L, pw), BigReal(1L, pw)});
  if (static_cast<int>(inputs.size()) != src.input_count()) throw ArityError("one input range per graph input");

  const size_t n = src.size();
  std::vector<NodePlan> plan(n);
  // consumers[j] = (k, |w_kj|)
  std::vector<std::vector<std::pair<int, BigReal>>> consumers(n);
  int gadgets = 0;
  for (const NodeSpec& nd : src.nodes()) {
    NodePlan& pl = plan[static_cast<size_t>(nd.id)];
    for (const Edge& e : nd.in_edges) consumers[static_cast<size_t>(e.src)].push_back({nd.id, abs(BigReal(e.weight, pw))});
    if (nd.kind == NodeKind::Input) {
      pl.kind = Plan::Input;
    } else if (nd.kind == NodeKind::Output) {
      pl.kind = Plan::Output;
    } else if (nd.in_edges.empty()) {
      if (nd.act.kind == ActKind::Arcsin && !(abs(nd.bias) <= 1)) throw DomainError("constant arcsin out of domain", nd.id);
      pl.kind = Plan::Constant;
    } else if (nd.act.kind == ActKind::Identity) {
      pl.kind = Plan::Identity;
    } else if (nd.act.kind == ActKind::Sin || nd.act.kind == ActKind::Arcsin) {
      if (!nd.range) throw RangeError("node '" + nd.label + "' has no declared range");
      pl.kind = nd.act.kind == ActKind::Sin ? Plan::Sin : Plan::Arcsin;
      pl.h = rp.fd_step ? BigReal(*rp.fd_step, pw) : BigReal::exp2i(-20, pw);
      pl.delta_s = pl.delta_m = rp.mult_delta ? BigReal(*rp.mult_delta, pw) : BigReal::exp2i(-10, pw);
      ++gadgets;
    } else {
      throw SchemaError("rewrite accepts sin and arcsin graphs only, found " + nd.act.name());
    }
  }

  RewriteReport rep;
  rep.target_budget = T;
  const BigReal zero(0L, pw), one(1L, pw);
  const BigReal share = gadgets > 0 ? BigReal(T * BigReal(0.9, pw) / gadgets) : T;
  const BigReal rho_floor = BigReal::exp2i(-16, pw);
  // With every step pinned there is nothing to tune; the report then states
  // the budget those steps give.
  const bool pinned = rp.fd_step && rp.mult_delta;
  bool ok = false;
  for (int it = 1; it <= rp.max_iterations && !ok; ++it) {
    rep.iterations = it;
    // Forward: error bounds and widened ranges.
    for (int id : src.topo_order()) {
      const NodeSpec& nd = src.node(id);
      NodePlan& pl = plan[static_cast<size_t>(id)];
      pl.e_in = zero;
      for (const Edge& e : nd.in_edges) pl.e_in += abs(BigReal(e.weight, pw)) * plan[static_cast<size_t>(e.src)].err;
      switch (pl.kind) {
        case Plan::Input:
        case Plan::Constant:
          pl.local = zero;
          pl.lip = zero;
          pl.err = zero;
          break;
        case Plan::Identity:
        case Plan::Output:
          pl.local = zero;
          pl.lip = one;
          pl.err = pl.e_in;
          break;
        case Plan::Arcsin: {
          ArcsinGadget ag{pl.h};
          const Interval& d = *nd.range;
          const BigReal lim = BigReal(1.5, pw) - pl.h;
          const bool valid = pl.h <= BigReal(0.25, pw) && BigReal(d.lo - pl.e_in) >= -lim &&
                             BigReal(d.hi + pl.e_in) <= lim;
          pl.local = ag.local_bound();
          pl.lip = valid ? ag.lipschitz_bound() : huge(pw);
          if (valid && pl.e_in > 0) {
            // The gadget averages a function with modulus omega_asin(e) + 16 pi e.
            // Concavity makes the secant slope at e_in valid for any extra
            // perturbation on top of e_in as well.
            const BigReal sec = (omega_asin(pl.e_in) + 16 * BigReal::pi(pw) * pl.e_in) / pl.e_in;
            pl.lip = min(pl.lip, sec);
          }
          pl.err = pl.local + pl.lip * pl.e_in;
          break;
        }
        case Plan::Sin: {
          const Interval& d = *nd.range;
          Interval w{BigReal(BigReal(d.lo, pw) - pl.e_in), BigReal(BigReal(d.hi, pw) + pl.e_in)};
          if (w.mag() > BigReal::exp2i(static_cast<long>(pw) / 2, pw)) {
            // Upstream errors still swamp the range; they shrink first.
            pl.local = zero;
            pl.lip = huge(pw);
            pl.err = huge(pw);
            break;
          }
          pl.sin = SinGadget::make(w, pl.delta_s, pl.delta_m, rp.sin_shift);
          pl.local = pl.sin.local_bound();
          pl.lip = pl.sin.lipschitz_bound();
          pl.err = pl.local + pl.lip * pl.e_in;
          break;
        }
      }
    }
    // Backward: sensitivity of the output to each node value.
    const auto& order = src.topo_order();
    for (auto itr = order.rbegin(); itr != order.rend(); ++itr) {
      NodePlan& pl = plan[static_cast<size_t>(*itr)];
      if (pl.kind == Plan::Output) {
        pl.sens = one;
        continue;
      }
      pl.sens = zero;
      for (const auto& [k, w] : consumers[static_cast<size_t>(*itr)]) {
        const NodePlan& c = plan[static_cast<size_t>(k)];
        pl.sens += w * c.lip * c.sens;
      }
    }
    BigReal total = zero;
    for (const NodePlan& pl : plan) total += pl.sens * pl.local;
    rep.gadget_total = total;
    if (total <= T * BigReal(0.9, pw) || pinned) {
      ok = true;
      break;
    }
    for (NodePlan& pl : plan) {
      const BigReal c = pl.sens * pl.local;
      if (!(c > share)) continue;
      const BigReal rho = max(rho_floor, BigReal(share / c));
      if (pl.kind == Plan::Arcsin && !rp.fd_step) {
        pl.h = min(BigReal(pl.h * rho * rho / 2), BigReal(0.125, pw));
      } else if (pl.kind == Plan::Sin && !rp.mult_delta) {
        const BigReal f = sqrt(BigReal(rho / 2));
        pl.delta_s *= f;
        pl.delta_m *= f;
      }
    }
  }
  if (!ok) throw PrecisionError("rewrite did not reach the target budget");

  // Precision: internal rounding, carried to the output by the same
  // sensitivities, stays below a tenth of the target.
  Emitted probe = emit_all(src, plan, pw, inputs);
  BigReal noise = probe.out_kappa;
  for (size_t k = 0; k < n; ++k) noise += plan[k].sens * probe.kappa[k];
  const double need = std::ceil(log2(BigReal(noise / (T / 10))).to_double()) + 8;
  Precision p = std::max<Precision>({src.precision_bits(), rp.precision, static_cast<Precision>(std::max(need, 64.0))});
  p = (p + 63) / 64 * 64;

  Emitted fin = emit_all(src, plan, p, inputs);
  const BigReal unit = BigReal::exp2i(-static_cast<long>(p), pw);
  rep.precision_bits = p;
  rep.rounding_total = fin.out_kappa * unit;
  for (const NodeSpec& nd : src.nodes()) {
    const NodePlan& pl = plan[static_cast<size_t>(nd.id)];
    if (pl.kind == Plan::Input || pl.kind == Plan::Output) continue;
    NodeBudget b;
    b.source_node = nd.id;
    b.label = nd.label;
    b.local = pl.local;
    b.lipschitz = pl.lip;
    b.sensitivity = pl.sens;
    b.budget = pl.sens * pl.local;
    b.rounding = pl.sens * fin.kappa[static_cast<size_t>(nd.id)] * unit;
    rep.rounding_total += b.rounding;
    switch (pl.kind) {
      case Plan::Constant: b.gadget = "constant"; break;
      case Plan::Identity: b.gadget = "identity"; break;
      case Plan::Arcsin:
        b.gadget = "arcsin";
        b.params = {{"h", pl.h.to_string(6)}};
        break;
      case Plan::Sin:
        b.gadget = "sin";
        b.params = {{"shift", pl.sin.shift.to_string()},
                    {"delta_s", pl.delta_s.to_string(6)},
                    {"delta_m", pl.delta_m.to_string(6)},
                    {"x_lo", pl.sin.x_lo.to_string(6)},
                    {"x_hi", pl.sin.x_hi.to_string(6)}};
        break;
      default: break;
    }
    rep.nodes.push_back(std::move(b));
  }
  rep.total = rep.gadget_total + rep.rounding_total;
  rep.source_nodes = count(src).neurons;
  rep.rewritten_nodes = count(fin.net).neurons;
  return {std::move(fin.net), std::move(rep)};
}

A3Build build_a3(const Target& f, const A2Options& opt, const RewriteParams& rp) {
  const auto t_start = std::chrono::steady_clock::now();
  A2Options a2opt = opt;
  a2opt.samples = 0;
  A2Build src = build_a2(f, a2opt);
  RewriteResult rw = rewrite_a2_to_a3(src.net, rp);
  const Precision p = rw.net.precision_bits();
  BuildReport rep = src.report;
  rep.family = "A3";
  rep.precision_bits = p;
  rep.cert_error_bound = src.report.cert_error_bound + rw.report.total;
  const auto pts = sample_points(1, opt.samples, opt.seed, p, 0, BigReal(0L, p));
  SupError se = measure_sup_error(rw.net, f, pts, opt.workers);
  rep.measured_sup_error = se.sup;
  rep.samples = se.samples;
  rep.extra["source_precision_bits"] = src.report.precision_bits;
  rep.extra["source_cert_error_bound"] = src.report.cert_error_bound.to_string(17);
  rep.extra["rewrite_budget"] = rw.report.total.to_string(17);
  rep.extra["rewrite_target_budget"] = rw.report.target_budget.to_string(17);
  rep.extra["source_nodes"] = rw.report.source_nodes;
  rep.extra["rewritten_nodes"] = rw.report.rewritten_nodes;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return {std::move(rw.net), std::move(src), std::move(rw.report), std::move(rep)};
}

}  // namespace superx
