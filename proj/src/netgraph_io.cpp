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

#include "superx/netgraph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace superx {

using nlohmann::json;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void attach_checksum(json& j) {
  j.erase("checksum");
  j["checksum"] = fnv1a64_hex(j.dump());
}

void check_checksum(const json& j) {
  if (!j.contains("checksum")) return;
  json copy = j;
  copy.erase("checksum");
  if (fnv1a64_hex(copy.dump()) != j.at("checksum").get<std::string>()) {
    throw ChecksumError("checksum mismatch");
  }
}

void require_format_version(const json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("format_version")) {
    throw SchemaError(what + ": missing format_version");
  }
  if (!j["format_version"].is_number_integer() || j["format_version"].get<int>() != kFormatVersion) {
    throw SchemaError(what + ": unsupported format_version");
  }
}

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Input: return "input";
    case NodeKind::Hidden: return "hidden";
    case NodeKind::Output: return "output";
  }
  return "?";
}

NodeKind parse_kind(const std::string& s) {
  if (s == "input") return NodeKind::Input;
  if (s == "hidden") return NodeKind::Hidden;
  if (s == "output") return NodeKind::Output;
  throw SchemaError("unknown node kind '" + s + "'");
}

BigReal parse_value(const json& v, Precision p) {
  if (!v.is_string()) throw SchemaError("numeric values must be decimal strings");
  return BigReal::parse(v.get<std::string>(), p);
}

}  // namespace

json to_json(const NetGraph& net) {
  json nodes = json::array();
  for (const NodeSpec& n : net.nodes()) {
    json jn;
    jn["id"] = n.id;
    jn["kind"] = kind_name(n.kind);
    jn["label"] = n.label;
    if (n.kind != NodeKind::Input) {
      if (n.kind == NodeKind::Hidden) jn["activation"] = n.act.name();
      jn["bias"] = n.bias.to_string();
      jn["bias_slot"] = n.bias_slot;
      json edges = json::array();
      for (const Edge& e : n.in_edges) {
        edges.push_back({{"src", e.src}, {"weight", e.weight.to_string()}, {"slot", e.slot}});
      }
      jn["in_edges"] = edges;
      if (n.range) jn["range"] = {n.range->lo.to_string(), n.range->hi.to_string()};
    }
    nodes.push_back(jn);
  }
  json j;
  j["format_version"] = kFormatVersion;
  j["precision_bits"] = net.precision_bits();
  j["input_count"] = net.input_count();
  j["output_node"] = net.output_node();
  j["nodes"] = nodes;
  attach_checksum(j);
  return j;
}

NetGraph from_json(const json& j, Precision prec_override) {
  require_format_version(j, "network");
  check_checksum(j);
  try {
    const Precision file_prec = j.at("precision_bits").get<Precision>();
    const Precision p = prec_override > 0 ? prec_override : file_prec;
    const int d = j.at("input_count").get<int>();
    std::vector<NodeSpec> nodes;
    for (const json& jn : j.at("nodes")) {
      NodeSpec n;
      n.id = jn.at("id").get<int>();
      n.kind = parse_kind(jn.at("kind").get<std::string>());
      n.label = jn.value("label", std::string());
      n.bias = BigReal(0L, p);
      if (n.kind != NodeKind::Input) {
        if (n.kind == NodeKind::Hidden) n.act = Activation::parse(jn.at("activation").get<std::string>(), p);
        n.bias = parse_value(jn.at("bias"), p);
        n.bias_slot = jn.value("bias_slot", std::string());
        for (const json& je : jn.at("in_edges")) {
          n.in_edges.push_back(
              Edge{je.at("src").get<int>(), parse_value(je.at("weight"), p), je.value("slot", std::string())});
        }
        if (jn.contains("range")) {
          const json& r = jn["range"];
          if (!r.is_array() || r.size() != 2) throw SchemaError("range must be [lo, hi]");
          n.range = Interval{parse_value(r[0], p), parse_value(r[1], p)};
        }
      }
      nodes.push_back(std::move(n));
    }
    NetGraph g(d, std::move(nodes), p);
    if (j.contains("output_node") && j["output_node"].get<int>() != g.output_node()) {
      throw SchemaError("output_node does not match the node marked output");
    }
    return g;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("network schema: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

void save(const NetGraph& net, const std::string& path) { write_json_file(to_json(net), path); }

NetGraph load(const std::string& path, Precision prec_override) {
  return from_json(read_json_file(path), prec_override);
}

}  // namespace superx
