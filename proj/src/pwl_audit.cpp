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

#include "superx/pwl_audit.hpp"

#include <algorithm>
#include <random>

#include "superx/errors.hpp"
#include "superx/scalar.hpp"

namespace superx {

namespace {

std::string qstr(const mpq_class& q) { return q.get_str(); }

int sgn(const mpq_class& q) { return ::sgn(q); }

// Index of the piece whose open interval contains x; x must not be a knot.
size_t piece_index(const PwlFunc& f, const mpq_class& x) {
  auto it = std::upper_bound(f.knots.begin(), f.knots.end(), x);
  return static_cast<size_t>(it - f.knots.begin()) - 1;
}

mpq_class midpoint(const mpq_class& a, const mpq_class& b) { return (a + b) / 2; }

mpq_class act_value(const Activation& act, const mpq_class& z) {
  return apply_activation<mpq_class>(act, z);
}

void require_pwl(const Activation& act) {
  switch (act.kind) {
    case ActKind::Identity:
    case ActKind::ReLU:
    case ActKind::LeakyReLU:
    case ActKind::Step:
      return;
    default:
      throw NonPwlActivation("activation '" + act.name() + "' is not piecewise linear");
  }
}

// act(l) on an open interval where l has constant strict sign `s` (or is
// identically zero when s == 0).
PwlPiece act_piece(const Activation& act, const PwlPiece& l, int s) {
  switch (act.kind) {
    case ActKind::Identity:
      return l;
    case ActKind::ReLU:
      return s > 0 ? l : PwlPiece{0, 0};
    case ActKind::LeakyReLU: {
      if (s >= 0) return s > 0 ? l : PwlPiece{0, 0};
      const mpq_class a = to_rational(act.slope);
      return PwlPiece{a * l.slope, a * l.intercept};
    }
    case ActKind::Step:
      return PwlPiece{0, s >= 0 ? 1 : 0};
    default:
      throw NonPwlActivation("activation '" + act.name() + "' is not piecewise linear");
  }
}

}  // namespace

PwlFunc PwlFunc::affine(const mpq_class& slope, const mpq_class& intercept, const mpq_class& lo,
                        const mpq_class& hi) {
  if (!(lo < hi)) throw SchemaError("pwl domain must satisfy lo < hi");
  PwlFunc f;
  f.knots = {lo, hi};
  f.pieces = {PwlPiece{slope, intercept}};
  f.values = {slope * lo + intercept, slope * hi + intercept};
  return f;
}

mpq_class PwlFunc::operator()(const mpq_class& x) const {
  if (x < lo() || x > hi()) throw DomainError("pwl argument outside its domain");
  auto it = std::lower_bound(knots.begin(), knots.end(), x);
  if (it != knots.end() && *it == x) return values[static_cast<size_t>(it - knots.begin())];
  return pieces[piece_index(*this, x)].at(x);
}

std::vector<mpq_class> PwlFunc::breaks() const {
  return std::vector<mpq_class>(knots.begin() + 1, knots.end() - 1);
}

bool PwlFunc::jump_at(size_t i) const {
  if (i > 0 && pieces[i - 1].at(knots[i]) != values[i]) return true;
  if (i + 1 < knots.size() && pieces[i].at(knots[i]) != values[i]) return true;
  return false;
}

bool PwlFunc::has_jump() const {
  for (size_t i = 0; i < knots.size(); ++i) {
    if (jump_at(i)) return true;
  }
  return false;
}

void PwlFunc::normalize() {
  std::vector<mpq_class> k{knots.front()};
  std::vector<PwlPiece> p{pieces.front()};
  std::vector<mpq_class> v{values.front()};
  for (size_t i = 1; i + 1 < knots.size(); ++i) {
    const PwlPiece& next = pieces[i];
    if (next == p.back() && next.at(knots[i]) == values[i]) continue;
    k.push_back(knots[i]);
    v.push_back(values[i]);
    p.push_back(next);
  }
  k.push_back(knots.back());
  v.push_back(values.back());
  knots = std::move(k);
  pieces = std::move(p);
  values = std::move(v);
}

void PwlFunc::validate() const {
  if (knots.size() < 2) throw SchemaError("pwl needs at least two knots");
  if (pieces.size() + 1 != knots.size() || values.size() != knots.size()) {
    throw SchemaError("pwl piece / knot counts disagree");
  }
  for (size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i - 1] < knots[i])) throw SchemaError("pwl knots must increase strictly");
  }
}

nlohmann::json PwlFunc::to_json() const {
  nlohmann::json j = {{"format_version", 1}, {"knots", nlohmann::json::array()},
                      {"values", nlohmann::json::array()}, {"pieces", nlohmann::json::array()}};
  for (const auto& k : knots) j["knots"].push_back(qstr(k));
  for (const auto& v : values) j["values"].push_back(qstr(v));
  for (const auto& p : pieces) j["pieces"].push_back({qstr(p.slope), qstr(p.intercept)});
  return j;
}

PwlFunc affine_combine(const std::vector<PwlFunc>& fs, const std::vector<mpq_class>& weights,
                       const mpq_class& bias) {
  if (fs.size() != weights.size()) throw ArityError("one weight per pwl function expected");
  if (fs.empty()) throw ArityError("affine_combine needs at least one function");
  for (const auto& f : fs) {
    if (f.lo() != fs[0].lo() || f.hi() != fs[0].hi()) {
      throw DomainMismatch("pwl functions live on different domains");
    }
  }
  std::vector<mpq_class> knots;
  for (const auto& f : fs) knots.insert(knots.end(), f.knots.begin(), f.knots.end());
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  PwlFunc out;
  out.knots = knots;
  out.values.reserve(knots.size());
  out.pieces.reserve(knots.size() - 1);
  std::vector<size_t> idx(fs.size(), 0);
  for (size_t i = 0; i < knots.size(); ++i) {
    mpq_class v = bias;
    for (size_t j = 0; j < fs.size(); ++j) {
      // Knots of fs[j] are a subset of the merged ones; advance in lockstep.
      const PwlFunc& f = fs[j];
      while (idx[j] + 1 < f.knots.size() && f.knots[idx[j] + 1] <= knots[i]) ++idx[j];
      v += weights[j] * (f.knots[idx[j]] == knots[i] ? f.values[idx[j]] : f.pieces[idx[j]].at(knots[i]));
    }
    out.values.push_back(v);
    if (i + 1 == knots.size()) break;
    PwlPiece p{0, bias};
    for (size_t j = 0; j < fs.size(); ++j) {
      const PwlPiece& q = fs[j].pieces[std::min(idx[j], fs[j].pieces.size() - 1)];
      p.slope += weights[j] * q.slope;
      p.intercept += weights[j] * q.intercept;
    }
    out.pieces.push_back(p);
  }
  out.normalize();
  return out;
}

PwlFunc apply_activation(const PwlFunc& f, const Activation& act) {
  require_pwl(act);
  PwlFunc out;
  for (size_t i = 0; i < f.pieces.size(); ++i) {
    const mpq_class& a = f.knots[i];
    const mpq_class& b = f.knots[i + 1];
    const PwlPiece& l = f.pieces[i];
    out.knots.push_back(a);
    out.values.push_back(act_value(act, f.values[i]));
    if (l.slope != 0) {
      const mpq_class r = -l.intercept / l.slope;
      if (a < r && r < b) {
        out.pieces.push_back(act_piece(act, l, sgn(l.at(midpoint(a, r)))));
        out.knots.push_back(r);
        out.values.push_back(act_value(act, mpq_class(0)));
        out.pieces.push_back(act_piece(act, l, sgn(l.at(midpoint(r, b)))));
        continue;
      }
    }
    out.pieces.push_back(act_piece(act, l, sgn(l.at(midpoint(a, b)))));
  }
  out.knots.push_back(f.hi());
  out.values.push_back(act_value(act, f.values.back()));
  out.normalize();
  return out;
}

PwlFunc compose_network(const NetGraph& net) {
  if (net.input_count() != 1) throw ArityError("pwl composition needs a one-input network");
  std::vector<PwlFunc> val(net.size());
  for (int id : net.topo_order()) {
    const NodeSpec& n = net.node(id);
    if (n.kind == NodeKind::Input) {
      val[static_cast<size_t>(id)] = PwlFunc::affine(1, 0);
      continue;
    }
    require_pwl(n.act);
    PwlFunc pre;
    const mpq_class bias = to_rational(n.bias);
    if (n.in_edges.empty()) {
      pre = PwlFunc::affine(0, bias);
    } else {
      std::vector<PwlFunc> fs;
      std::vector<mpq_class> ws;
      for (const Edge& e : n.in_edges) {
        fs.push_back(val[static_cast<size_t>(e.src)]);
        ws.push_back(to_rational(e.weight));
      }
      pre = affine_combine(fs, ws, bias);
    }
    val[static_cast<size_t>(id)] = apply_activation(pre, n.act);
  }
  return val[static_cast<size_t>(net.output_node())];
}

long sign_changes(const PwlFunc& f) {
  // Strict signs at representative points, in order: every knot value and
  // every maximal open sub-interval on which a piece keeps its sign.
  std::vector<int> seq;
  auto push = [&seq](int s) {
    if (s != 0) seq.push_back(s);
  };
  for (size_t i = 0; i < f.pieces.size(); ++i) {
    const mpq_class& a = f.knots[i];
    const mpq_class& b = f.knots[i + 1];
    const PwlPiece& l = f.pieces[i];
    push(sgn(f.values[i]));
    if (l.slope != 0) {
      const mpq_class r = -l.intercept / l.slope;
      if (a < r && r < b) {
        push(sgn(l.at(midpoint(a, r))));
        push(sgn(l.at(midpoint(r, b))));
        continue;
      }
    }
    push(sgn(l.at(midpoint(a, b))));
  }
  push(sgn(f.values.back()));
  // Greedy alternation starting from a positive point is maximal.
  long count = 0;
  int want = 1;
  for (int s : seq) {
    if (s == want) {
      ++count;
      want = -want;
    }
  }
  return count - 1;
}

NetGraph Architecture::instantiate(const std::vector<BigReal>& weights, Precision prec) const {
  require_pwl(act);
  if (static_cast<long>(weights.size()) != weight_count()) {
    throw ArityError("architecture needs " + std::to_string(weight_count()) + " weights, got " +
                     std::to_string(weights.size()));
  }
  GraphBuilder g(1, prec);
  std::vector<LinearForm> prev{g.input(0)};
  size_t k = 0;
  auto take = [&]() { return g.num(weights[k++]); };
  for (size_t layer = 0; layer < widths.size(); ++layer) {
    std::vector<LinearForm> cur;
    for (int n = 0; n < widths[layer]; ++n) {
      LinearForm pre = g.constant(0);
      for (const auto& p : prev) pre += p * take();
      pre += take();
      cur.push_back(g.neuron(act, pre, "l" + std::to_string(layer) + "." + std::to_string(n)));
    }
    prev = std::move(cur);
  }
  LinearForm out = g.constant(0);
  for (const auto& p : prev) out += p * take();
  out += take();
  return g.finish(out);
}

long Architecture::weight_count() const {
  long n = 0;
  long in = 1;
  for (int w : widths) {
    n += (in + 1) * w;
    in = w;
  }
  return n + in + 1;
}

nlohmann::json Architecture::to_json() const {
  return {{"widths", widths}, {"activation", act.name()}};
}

Architecture Architecture::from_json(const nlohmann::json& j) {
  Architecture a;
  a.widths = j.at("widths").get<std::vector<int>>();
  for (int w : a.widths) {
    if (w < 1) throw SchemaError("architecture widths must be positive");
  }
  if (j.contains("activation")) a.act = Activation::parse(j.at("activation").get<std::string>());
  require_pwl(a.act);
  return a;
}

NetGraph random_instance(const Architecture& a, std::uint64_t seed) {
  require_pwl(a.act);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> at(0.0, 1.0);
  // Weights are doubles; each bias is chosen so the neuron's pre-activation
  // vanishes at a random point of [0, 1], so every neuron bends inside the
  // domain. All values stay dyadic, hence exact at a large enough precision.
  std::vector<mpq_class> w;
  w.reserve(static_cast<size_t>(a.weight_count()));
  std::vector<int> sizes = a.widths;
  sizes.push_back(1);
  int fan_in = 1;
  for (size_t layer = 0; layer < sizes.size(); ++layer) {
    for (int n = 0; n < sizes[layer]; ++n) {
      std::vector<mpq_class> ws;
      for (int i = 0; i < fan_in; ++i) ws.emplace_back(u(rng));
      const mpq_class t(at(rng));
      // Values of the previous layer at t, from the weights drawn so far.
      std::vector<mpq_class> prev{t};
      size_t k = 0;
      int in = 1;
      for (size_t l = 0; l < layer; ++l) {
        std::vector<mpq_class> cur;
        for (int m = 0; m < sizes[l]; ++m) {
          mpq_class z = 0;
          for (int i = 0; i < in; ++i) z += w[k++] * prev[static_cast<size_t>(i)];
          z += w[k++];
          cur.push_back(act_value(a.act, z));
        }
        prev = std::move(cur);
        in = sizes[l];
      }
      mpq_class bias = 0;
      for (int i = 0; i < fan_in; ++i) bias -= ws[static_cast<size_t>(i)] * prev[static_cast<size_t>(i)];
      w.insert(w.end(), ws.begin(), ws.end());
      w.push_back(bias);
    }
    fan_in = sizes[layer];
  }
  size_t bits = 64;
  for (const auto& q : w) bits = std::max(bits, mpz_sizeinbase(q.get_num_mpz_t(), 2) + 8);
  const Precision prec = static_cast<Precision>((bits + 63) / 64 * 64);
  std::vector<BigReal> big;
  big.reserve(w.size());
  for (const auto& q : w) {
    big.push_back(from_rational(q, prec));
    if (to_rational(big.back()) != q) throw PrecisionError("random pwl weight is not exactly representable");
  }
  return a.instantiate(big, prec);
}

OscillationBound oscillation_bound(const NetGraph& net) {
  OscillationBound r;
  std::vector<long> b(net.size(), 0);
  for (int id : net.topo_order()) {
    const NodeSpec& n = net.node(id);
    if (n.kind == NodeKind::Input) continue;
    require_pwl(n.act);
    long in = 0;
    for (const Edge& e : n.in_edges) in += b[static_cast<size_t>(e.src)];
    if (n.act.kind == ActKind::Step) r.jumps = true;
    b[static_cast<size_t>(id)] = n.act.kind == ActKind::Identity ? in : 2 * in + 1;
  }
  r.breakpoints = b[static_cast<size_t>(net.output_node())];
  r.sign_changes = r.jumps ? 3 * r.breakpoints + 3 : r.breakpoints + 1;
  return r;
}

OscillationBound oscillation_bound(const Architecture& a) {
  std::vector<BigReal> ones(static_cast<size_t>(a.weight_count()), BigReal(1L, 64));
  return oscillation_bound(a.instantiate(ones));
}

nlohmann::json RefutationCertificate::to_json() const {
  nlohmann::json j = {{"N", N},
                      {"bound", bound},
                      {"verdict", refuted ? "Refuted" : "Inconclusive"}};
  if (refuted) {
    j["target"] = "sin(" + std::to_string(N + 1) + "*pi*x)";
    j["error_threshold"] = 1;
    j["witness_points"] = witness_points;
  }
  return j;
}

RefutationCertificate refutation_certificate(const Architecture& a, long N) {
  if (N < 0) throw SchemaError("refutation needs N >= 0");
  RefutationCertificate c;
  c.N = N;
  c.bound = oscillation_bound(a).sign_changes;
  c.refuted = N > c.bound;
  if (c.refuted) {
    for (long k = 0; k <= N; ++k) {
      c.witness_points.push_back(qstr(mpq_class(2 * k + 1, 2 * (N + 1))));
    }
  }
  return c;
}

nlohmann::json AuditReport::to_json() const {
  return {{"format_version", 1},
          {"architecture", arch.to_json()},
          {"bound", bound.sign_changes},
          {"bound_breakpoints", bound.breakpoints},
          {"draws", draws},
          {"seed", seed},
          {"max_observed", max_observed},
          {"refutation", refutation.to_json()}};
}

AuditReport audit(const Architecture& a, long N, long draws, std::uint64_t seed) {
  AuditReport r;
  r.arch = a;
  r.bound = oscillation_bound(a);
  r.draws = draws;
  r.seed = seed;
  r.max_observed = -1;
  std::mt19937_64 seeds(seed);
  for (long i = 0; i < draws; ++i) {
    const NetGraph net = random_instance(a, seeds());
    r.max_observed = std::max(r.max_observed, sign_changes(compose_network(net)));
  }
  r.refutation = refutation_certificate(a, N);
  return r;
}

}  // namespace superx
