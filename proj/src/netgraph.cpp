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

#include "superx/netgraph.hpp"

#include <queue>
#include <set>
#include <sstream>

namespace superx {

namespace {

std::string default_label(int id) { return "n" + std::to_string(id); }

}  // namespace

NetGraph::NetGraph(int input_count, std::vector<NodeSpec> nodes, Precision precision_bits)
    : input_count_(input_count), precision_bits_(precision_bits), nodes_(std::move(nodes)) {
  if (input_count_ < 0) throw SchemaError("negative input count");
  if (precision_bits_ < 2) throw SchemaError("precision must be at least 2 bits");
  const int n = static_cast<int>(nodes_.size());
  std::set<std::string> labels;
  for (int i = 0; i < n; ++i) {
    NodeSpec& node = nodes_[static_cast<size_t>(i)];
    if (node.id != i) throw SchemaError("node ids must be dense and ordered; found " + std::to_string(node.id));
    const bool is_input = i < input_count_;
    if (is_input != (node.kind == NodeKind::Input)) {
      throw SchemaError("nodes 0.." + std::to_string(input_count_ - 1) + " must be exactly the inputs");
    }
    if (node.kind == NodeKind::Input && (!node.in_edges.empty() || !node.bias.is_zero())) {
      throw SchemaError("input node " + std::to_string(i) + " has edges or bias");
    }
    if (node.kind == NodeKind::Output) {
      if (output_node_ >= 0) throw SchemaError("more than one output node");
      if (node.act.kind != ActKind::Identity) throw SchemaError("output node applies an activation");
      output_node_ = i;
    }
    if (node.act.kind == ActKind::Arcsin) {
      if (!node.range) throw RangeError("arcsin node " + std::to_string(i) + " lacks a range contract");
      if (node.range->lo < -1 || node.range->hi > 1 || node.range->hi < node.range->lo) {
        throw RangeError("arcsin node " + std::to_string(i) + " range not inside [-1, 1]");
      }
    }
    for (const Edge& e : node.in_edges) {
      if (e.src < 0 || e.src >= n) throw SchemaError("edge from unknown node " + std::to_string(e.src));
      if (nodes_[static_cast<size_t>(e.src)].kind == NodeKind::Output) {
        throw SchemaError("output node cannot feed other nodes");
      }
    }
    if (node.label.empty()) node.label = default_label(i);
    if (!labels.insert(node.label).second) node.label += "~" + std::to_string(i);
    labels.insert(node.label);
    if (node.bias_slot.empty()) node.bias_slot = node.label + ".b";
    for (size_t j = 0; j < node.in_edges.size(); ++j) {
      if (node.in_edges[j].slot.empty()) node.in_edges[j].slot = node.label + ".w" + std::to_string(j);
    }
  }
  if (output_node_ < 0) throw SchemaError("graph has no output node");

  std::vector<std::vector<int>> out(static_cast<size_t>(n));
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  for (const NodeSpec& node : nodes_) {
    for (const Edge& e : node.in_edges) {
      out[static_cast<size_t>(e.src)].push_back(node.id);
      ++indeg[static_cast<size_t>(node.id)];
    }
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (indeg[static_cast<size_t>(i)] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    int u = ready.top();
    ready.pop();
    order_.push_back(u);
    for (int v : out[static_cast<size_t>(u)]) {
      if (--indeg[static_cast<size_t>(v)] == 0) ready.push(v);
    }
  }
  if (static_cast<int>(order_.size()) != n) throw CycleError("network graph contains a cycle");
}

std::map<std::string, BigReal> NetGraph::slots() const {
  std::map<std::string, BigReal> out;
  for (const NodeSpec& node : nodes_) {
    if (node.kind == NodeKind::Input) continue;
    out[node.bias_slot] = node.bias;
    for (const Edge& e : node.in_edges) out[e.slot] = e.weight;
  }
  return out;
}

NetGraph NetGraph::reweighted(const std::map<std::string, BigReal>& values) const {
  std::vector<NodeSpec> nodes = nodes_;
  size_t used = 0;
  for (NodeSpec& node : nodes) {
    if (node.kind == NodeKind::Input) continue;
    if (auto it = values.find(node.bias_slot); it != values.end()) {
      node.bias = it->second;
      ++used;
    }
    for (Edge& e : node.in_edges) {
      if (auto it = values.find(e.slot); it != values.end()) {
        e.weight = it->second;
        ++used;
      }
    }
  }
  if (used < values.size()) throw SchemaError("reweight names an unknown slot");
  return NetGraph(input_count_, std::move(nodes), precision_bits_);
}

NetGraph NetGraph::with_precision(Precision prec) const {
  NetGraph g = *this;
  g.precision_bits_ = prec;
  return g;
}

GraphCount count(const NetGraph& net) {
  GraphCount c;
  for (const NodeSpec& n : net.nodes()) {
    if (n.kind == NodeKind::Hidden) ++c.neurons;
    c.connections += static_cast<long>(n.in_edges.size());
  }
  return c;
}

std::string skeleton(const NetGraph& net) {
  std::ostringstream os;
  os << "inputs " << net.input_count() << "\n";
  for (const NodeSpec& n : net.nodes()) {
    os << n.id << ' ';
    switch (n.kind) {
      case NodeKind::Input: os << "input"; break;
      case NodeKind::Hidden: os << "hidden " << n.act.name(); break;
      case NodeKind::Output: os << "output"; break;
    }
    os << " <-";
    for (const Edge& e : n.in_edges) os << ' ' << e.src;
    os << '\n';
  }
  return os.str();
}

LinearForm LinearForm::of_node(int id, Precision prec) {
  LinearForm f;
  f.terms.emplace(id, BigReal(1L, prec));
  f.constant = BigReal(0L, prec);
  return f;
}

LinearForm LinearForm::of_constant(const BigReal& c) {
  LinearForm f;
  f.constant = c;
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  for (const auto& [id, w] : o.terms) {
    auto it = terms.find(id);
    if (it == terms.end()) {
      terms.emplace(id, w);
    } else {
      it->second += w;
    }
  }
  constant += o.constant;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
  LinearForm neg = o;
  neg *= BigReal(-1L, 2);
  return *this += neg;
}

LinearForm& LinearForm::operator*=(const BigReal& c) {
  for (auto& [id, w] : terms) w *= c;
  constant *= c;
  return *this;
}

LinearForm& LinearForm::operator+=(const BigReal& c) {
  constant += c;
  return *this;
}

GraphBuilder::GraphBuilder(int input_count, Precision prec) : input_count_(input_count), prec_(prec) {
  for (int k = 0; k < input_count; ++k) {
    NodeSpec n;
    n.id = k;
    n.kind = NodeKind::Input;
    n.bias = BigReal(0L, prec);
    n.label = "x" + std::to_string(k);
    nodes_.push_back(std::move(n));
  }
}

LinearForm GraphBuilder::input(int k) const {
  if (k < 0 || k >= input_count_) throw ArityError("no input " + std::to_string(k));
  return LinearForm::of_node(k, prec_);
}

NodeSpec GraphBuilder::make_node(NodeKind kind, const Activation& act, const LinearForm& pre,
                                 const std::string& label) const {
  NodeSpec n;
  n.id = static_cast<int>(nodes_.size());
  n.kind = kind;
  n.act = act;
  n.bias = BigReal(pre.constant, prec_);
  for (const auto& [src, w] : pre.terms) n.in_edges.push_back(Edge{src, BigReal(w, prec_), {}});
  n.label = label;
  return n;
}

LinearForm GraphBuilder::neuron(const Activation& act, const LinearForm& pre, const std::string& label,
                                std::optional<Interval> range) {
  NodeSpec n = make_node(NodeKind::Hidden, act, pre, label);
  n.range = std::move(range);
  const int id = n.id;
  nodes_.push_back(std::move(n));
  return LinearForm::of_node(id, prec_);
}

NetGraph GraphBuilder::finish(const LinearForm& out, const std::string& label) {
  nodes_.push_back(make_node(NodeKind::Output, Activation(), out, label));
  return NetGraph(input_count_, std::move(nodes_), prec_);
}

NetGraph compose(const NetGraph& outer, const std::vector<NetGraph>& inner) {
  if (static_cast<int>(inner.size()) != outer.input_count()) {
    throw ArityError("compose: outer expects " + std::to_string(outer.input_count()) + " inner graphs");
  }
  if (inner.empty()) return outer;
  const int d = inner[0].input_count();
  Precision prec = outer.precision_bits();
  for (const NetGraph& g : inner) {
    if (g.input_count() != d) throw ArityError("compose: inner graphs differ in input count");
    prec = std::max(prec, g.precision_bits());
  }
  GraphBuilder b(d, prec);
  std::vector<LinearForm> outer_inputs;
  for (size_t k = 0; k < inner.size(); ++k) {
    const NetGraph& g = inner[k];
    std::vector<LinearForm> val(g.size());
    for (int id : g.topo_order()) {
      const NodeSpec& n = g.node(id);
      if (n.kind == NodeKind::Input) {
        val[static_cast<size_t>(id)] = b.input(id);
        continue;
      }
      LinearForm pre = b.constant(n.bias);
      for (const Edge& e : n.in_edges) pre += val[static_cast<size_t>(e.src)] * e.weight;
      if (n.kind == NodeKind::Output) {
        val[static_cast<size_t>(id)] = pre;
      } else {
        val[static_cast<size_t>(id)] =
            b.neuron(n.act, pre, "g" + std::to_string(k) + "." + n.label, n.range);
      }
    }
    outer_inputs.push_back(val[static_cast<size_t>(g.output_node())]);
  }
  std::vector<LinearForm> val(outer.size());
  LinearForm result;
  for (int id : outer.topo_order()) {
    const NodeSpec& n = outer.node(id);
    if (n.kind == NodeKind::Input) {
      val[static_cast<size_t>(id)] = outer_inputs[static_cast<size_t>(id)];
      continue;
    }
    LinearForm pre = b.constant(n.bias);
    for (const Edge& e : n.in_edges) pre += val[static_cast<size_t>(e.src)] * e.weight;
    if (n.kind == NodeKind::Output) {
      result = pre;
    } else {
      val[static_cast<size_t>(id)] = b.neuron(n.act, pre, "o." + n.label, n.range);
    }
  }
  return b.finish(result);
}

namespace {

BigReal widen_up(const BigReal& x, Precision p) {
  BigReal eps = BigReal::exp2i(-(static_cast<long>(p) - 10), p);
  return x + abs(x) * eps + eps;
}

BigReal widen_down(const BigReal& x, Precision p) {
  BigReal eps = BigReal::exp2i(-(static_cast<long>(p) - 10), p);
  return x - abs(x) * eps - eps;
}

}  // namespace

Interval activation_image(const Activation& act, const Interval& z) {
  const Precision p = std::max(z.lo.precision(), z.hi.precision());
  switch (act.kind) {
    case ActKind::Identity:
      return z;
    case ActKind::Sin: {
      const BigReal pi = BigReal::pi(p);
      if (z.width() >= 2 * pi) return {BigReal(-1L, p), BigReal(1L, p)};
      BigReal a = sin(z.lo), b = sin(z.hi);
      Interval r{min(a, b), max(a, b)};
      // Peaks at pi/2 + 2 pi k, troughs at -pi/2 + 2 pi k.
      BigReal k_peak = ceil((z.lo - pi / 2) / (2 * pi));
      if (pi / 2 + 2 * pi * k_peak <= z.hi) r.hi = BigReal(1L, p);
      BigReal k_trough = ceil((z.lo + pi / 2) / (2 * pi));
      if (-pi / 2 + 2 * pi * k_trough <= z.hi) r.lo = BigReal(-1L, p);
      return r;
    }
    case ActKind::Arcsin: {
      BigReal lo = max(z.lo, BigReal(-1L, p)), hi = min(z.hi, BigReal(1L, p));
      return {asin(lo), asin(hi)};
    }
    case ActKind::LeakyReLU:
      if (act.slope < 0) {
        BigReal a = apply_activation(act, z.lo), b = apply_activation(act, z.hi);
        BigReal lo = min(a, b);
        if (z.lo < 0 && z.hi > 0) lo = min(lo, BigReal(0L, p));
        return {lo, max(a, b)};
      }
      [[fallthrough]];
    default:
      // Monotone non-decreasing.
      return {apply_activation(act, z.lo), apply_activation(act, z.hi)};
  }
}

NodeRanges propagate_ranges(const NetGraph& net, const std::vector<Interval>& inputs) {
  if (static_cast<int>(inputs.size()) != net.input_count()) throw ArityError("range count mismatch");
  const Precision p = net.precision_bits();
  NodeRanges r;
  r.pre.resize(net.size());
  r.post.resize(net.size());
  for (int id : net.topo_order()) {
    const NodeSpec& n = net.node(id);
    const size_t i = static_cast<size_t>(id);
    if (n.kind == NodeKind::Input) {
      r.pre[i] = r.post[i] = inputs[i];
      continue;
    }
    BigReal lo(n.bias, p), hi(n.bias, p);
    for (const Edge& e : n.in_edges) {
      const Interval& s = r.post[static_cast<size_t>(e.src)];
      if (e.weight >= 0) {
        lo += e.weight * s.lo;
        hi += e.weight * s.hi;
      } else {
        lo += e.weight * s.hi;
        hi += e.weight * s.lo;
      }
    }
    r.pre[i] = {widen_down(lo, p), widen_up(hi, p)};
    Interval img = activation_image(n.act, r.pre[i]);
    r.post[i] = {widen_down(img.lo, p), widen_up(img.hi, p)};
    if (n.act.kind == ActKind::Sin || n.act.kind == ActKind::Step) {
      r.post[i].lo = max(r.post[i].lo, BigReal(n.act.kind == ActKind::Sin ? -1L : 0L, p));
      r.post[i].hi = min(r.post[i].hi, BigReal(1L, p));
    }
  }
  return r;
}

}  // namespace superx
