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

#ifndef SUPERX_NETGRAPH_HPP_
#define SUPERX_NETGRAPH_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superx/activation.hpp"
#include "superx/bigreal.hpp"
#include "superx/errors.hpp"
#include "superx/scalar.hpp"

namespace superx {

enum class NodeKind { Input, Hidden, Output };

struct Interval {
  BigReal lo;
  BigReal hi;
  bool contains(const BigReal& x) const { return lo <= x && x <= hi; }
  BigReal width() const { return hi - lo; }
  BigReal mag() const { return max(abs(lo), abs(hi)); }
};

struct Edge {
  int src = -1;
  BigReal weight;
  std::string slot;
};

struct NodeSpec {
  int id = -1;
  NodeKind kind = NodeKind::Hidden;
  Activation act;
  BigReal bias;
  std::vector<Edge> in_edges;
  std::string bias_slot;
  // Declared pre-activation range; mandatory for Arcsin nodes.
  std::optional<Interval> range;
  std::string label;
};

// Immutable feedforward network on a DAG. Node ids are dense, inputs are
// ids 0..input_count-1 and there is exactly one output node, which applies
// no activation.
class NetGraph {
 public:
  NetGraph() = default;
  // Validates the graph; throws CycleError, ArityError or SchemaError.
  NetGraph(int input_count, std::vector<NodeSpec> nodes, Precision precision_bits);

  int input_count() const { return input_count_; }
  int output_node() const { return output_node_; }
  Precision precision_bits() const { return precision_bits_; }
  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const NodeSpec& node(int id) const { return nodes_.at(static_cast<size_t>(id)); }
  size_t size() const { return nodes_.size(); }
  // Deterministic topological order (smallest ready id first).
  const std::vector<int>& topo_order() const { return order_; }

  // Current value of every named weight slot.
  std::map<std::string, BigReal> slots() const;
  // Same architecture with the given slots overwritten. Unknown names throw.
  NetGraph reweighted(const std::map<std::string, BigReal>& values) const;
  NetGraph with_precision(Precision prec) const;

 private:
  int input_count_ = 0;
  int output_node_ = -1;
  Precision precision_bits_ = kDefaultPrecision;
  std::vector<NodeSpec> nodes_;
  std::vector<int> order_;
};

struct GraphCount {
  long neurons = 0;
  long connections = 0;
};

GraphCount count(const NetGraph& net);

// Canonical listing of nodes, activations and edges without weight values.
std::string skeleton(const NetGraph& net);

// Feeds the outputs of `inner` (all with the same input count) into the
// inputs of `outer`. Inner output nodes are affine, so they are folded into
// the consuming pre-activations rather than kept as neurons.
NetGraph compose(const NetGraph& outer, const std::vector<NetGraph>& inner);

// Affine combination of node values plus a constant.
struct LinearForm {
  std::map<int, BigReal> terms;
  BigReal constant;

  static LinearForm of_node(int id, Precision prec);
  static LinearForm of_constant(const BigReal& c);

  LinearForm& operator+=(const LinearForm& o);
  LinearForm& operator-=(const LinearForm& o);
  LinearForm& operator*=(const BigReal& c);
  LinearForm& operator+=(const BigReal& c);
  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
  friend LinearForm operator*(LinearForm a, const BigReal& c) { return a *= c; }
  friend LinearForm operator*(const BigReal& c, LinearForm a) { return a *= c; }
  friend LinearForm operator+(LinearForm a, const BigReal& c) { return a += c; }
  friend LinearForm operator-(LinearForm a, const BigReal& c) { return a += -c; }
  bool is_constant() const { return terms.empty(); }
};

class GraphBuilder {
 public:
  GraphBuilder(int input_count, Precision prec);

  Precision precision() const { return prec_; }
  LinearForm input(int k) const;
  LinearForm constant(const BigReal& c) const { return LinearForm::of_constant(BigReal(c, prec_)); }
  BigReal num(long v) const { return BigReal(v, prec_); }
  BigReal num(const BigReal& v) const { return BigReal(v, prec_); }

  // Adds a hidden neuron act(pre) and returns its value as a form.
  LinearForm neuron(const Activation& act, const LinearForm& pre, const std::string& label,
                    std::optional<Interval> range = std::nullopt);
  int last_id() const { return static_cast<int>(nodes_.size()) - 1; }
  NetGraph finish(const LinearForm& out, const std::string& label = "out");

 private:
  NodeSpec make_node(NodeKind kind, const Activation& act, const LinearForm& pre,
                     const std::string& label) const;

  int input_count_;
  Precision prec_;
  std::vector<NodeSpec> nodes_;
};

struct NodeRanges {
  std::vector<Interval> pre;
  std::vector<Interval> post;
};

// Worst-case interval propagation through affine maps and activations,
// rounded outward.
NodeRanges propagate_ranges(const NetGraph& net, const std::vector<Interval>& inputs);

// Image of an interval under an activation.
Interval activation_image(const Activation& act, const Interval& z);

namespace detail {

template <typename Scalar>
Scalar eval_like(std::span<const Scalar> x, const NetGraph& net) {
  if constexpr (std::is_same_v<Scalar, BigReal>) {
    Precision p = 0;
    for (const auto& v : x) p = std::max(p, v.precision());
    if (p == 0) p = net.precision_bits();
    return BigReal(0L, p);
  } else {
    (void)net;
    return ScalarOps<Scalar>::from_long(0, Scalar{});
  }
}

template <typename Scalar>
Scalar slack(const Scalar& like) {
  if constexpr (std::is_same_v<Scalar, mpq_class>) {
    return mpq_class(0);
  } else {
    return ScalarOps<Scalar>::exp2i(-(static_cast<long>(ScalarOps<Scalar>::precision(like)) - 4),
                                    like);
  }
}

}  // namespace detail

// Value of every node, indexed by id.
template <typename Scalar>
std::vector<Scalar> evaluate_all(const NetGraph& net, std::span<const Scalar> x) {
  if (static_cast<int>(x.size()) != net.input_count()) {
    throw ArityError("expected " + std::to_string(net.input_count()) + " inputs, got " +
                     std::to_string(x.size()));
  }
  using Ops = ScalarOps<Scalar>;
  const Scalar like = detail::eval_like(x, net);
  const Scalar tol = detail::slack(like);
  std::vector<Scalar> val(net.size(), like);
  for (int id : net.topo_order()) {
    const NodeSpec& n = net.node(id);
    if (n.kind == NodeKind::Input) {
      val[static_cast<size_t>(id)] = x[static_cast<size_t>(id)];
      continue;
    }
    Scalar z = Ops::from_big(n.bias, like);
    for (const Edge& e : n.in_edges) z += Ops::from_big(e.weight, like) * val[static_cast<size_t>(e.src)];
    if (n.act.kind == ActKind::Arcsin) {
      const Interval& r = *n.range;
      if (z < Ops::from_big(r.lo, like) - tol || z > Ops::from_big(r.hi, like) + tol) {
        throw DomainError("arcsin node " + std::to_string(id) + " left its declared range", id);
      }
      if (z > 1) z = Ops::from_long(1, like);
      if (z < -1) z = Ops::from_long(-1, like);
    }
    val[static_cast<size_t>(id)] = apply_activation(n.act, z);
  }
  return val;
}

template <typename Scalar>
Scalar evaluate(const NetGraph& net, std::span<const Scalar> x) {
  return evaluate_all(net, x)[static_cast<size_t>(net.output_node())];
}

template <typename Scalar>
Scalar evaluate(const NetGraph& net, const Vec<Scalar>& x) {
  return evaluate(net, std::span<const Scalar>(x.data(), static_cast<size_t>(x.size())));
}

template <typename Scalar>
std::vector<Scalar> evaluate_all(const NetGraph& net, const Vec<Scalar>& x) {
  return evaluate_all(net, std::span<const Scalar>(x.data(), static_cast<size_t>(x.size())));
}

// Single-input convenience.
template <typename Scalar>
Scalar evaluate1(const NetGraph& net, const Scalar& x) {
  return evaluate(net, std::span<const Scalar>(&x, 1));
}

}  // namespace superx

#endif  // SUPERX_NETGRAPH_HPP_
