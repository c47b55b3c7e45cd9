// Copyright 2026 The rrtsel Authors.
//
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

// Requirement trees: weighted AND-OR trees whose leaves each name a single
// QoS property or a single offer kind. Every edge carries the requester's
// preference for the subtree below it, and the weights of siblings sum to 1.
//
// Nodes are addressed by path: the root is "0" and the i-th child of node
// "p" is "p.i". Traces and violations use these paths.

#pragma once

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/json_io.hpp"
#include "rrtsel/offer.hpp"
#include "rrtsel/qos.hpp"

namespace rrtsel {

struct QualityReq {
  std::string property;
  bool operator==(const QualityReq&) const = default;
};

struct OfferReq {
  OfferKind kind;
  bool operator==(const OfferReq&) const = default;
};

using SimpleRequirement = std::variant<QualityReq, OfferReq>;

inline std::string describe(const SimpleRequirement& req) {
  if (const auto* q = std::get_if<QualityReq>(&req)) return "quality:" + q->property;
  return "offer:" + std::string(to_string(std::get<OfferReq>(req).kind));
}

enum class Op { And, Or };

constexpr std::string_view to_string(Op op) { return op == Op::And ? "AND" : "OR"; }

struct RrtEdge;

struct RrtNode {
  std::optional<SimpleRequirement> requirement;  // set iff leaf
  Op op = Op::And;
  std::vector<RrtEdge> children;

  bool is_leaf() const noexcept { return requirement.has_value(); }
  bool operator==(const RrtNode&) const;
};

struct RrtEdge {
  double weight = 0.0;
  RrtNode node;
  bool operator==(const RrtEdge&) const = default;
};

inline bool RrtNode::operator==(const RrtNode&) const = default;

inline constexpr double kWeightSumTolerance = 1e-9;

inline std::string child_path(const std::string& parent, std::size_t index) {
  return parent + "." + std::to_string(index);
}

inline RrtNode make_leaf(SimpleRequirement req) {
  RrtNode n;
  n.requirement = std::move(req);
  return n;
}

inline RrtNode quality_leaf(std::string property) {
  return make_leaf(QualityReq{std::move(property)});
}

inline RrtNode offer_leaf(OfferKind kind) { return make_leaf(OfferReq{kind}); }

inline RrtNode make_internal(Op op, std::vector<RrtEdge> children) {
  RrtNode n;
  n.op = op;
  n.children = std::move(children);
  return n;
}

inline RrtNode make_and(std::vector<RrtEdge> children) {
  return make_internal(Op::And, std::move(children));
}

inline RrtNode make_or(std::vector<RrtEdge> children) {
  return make_internal(Op::Or, std::move(children));
}

// AND[0.5 -> OR[0.4 -> DO, 0.6 -> SO], 0.5 -> OR[0.7 -> reputation, 0.3 -> LCO]]
inline RrtNode canonical_tree() {
  return make_and({
      {0.5, make_or({{0.4, offer_leaf(OfferKind::DO)}, {0.6, offer_leaf(OfferKind::SO)}})},
      {0.5, make_or({{0.7, quality_leaf("reputation")}, {0.3, offer_leaf(OfferKind::LCO)}})},
  });
}

// --- validation -------------------------------------------------------------

namespace detail {

inline std::string format_sum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline void validate_node(const RrtNode& node, const std::string& path,
                          const QosRegistry& registry, Violations& out) {
  if (node.is_leaf()) {
    if (const auto* q = std::get_if<QualityReq>(&*node.requirement)) {
      if (registry.find(q->property) == nullptr) {
        out.push_back({path, "unknown-property", "unknown QoS property '" + q->property + "'"});
      }
    }
    return;
  }
  if (node.children.size() < 2) {
    out.push_back({path, "arity", "internal node arity < 2"});
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    double w = node.children[i].weight;
    if (!(w > 0.0 && w <= 1.0)) {
      out.push_back({child_path(path, i), "weight-range",
                     "weight " + format_sum(w) + " not in (0, 1]"});
    }
    sum += w;
  }
  if (!node.children.empty() && !(std::abs(sum - 1.0) <= kWeightSumTolerance)) {
    out.push_back(
        {path, "weight-sum", "sibling weights sum " + format_sum(sum) + " ≠ 1"});
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    validate_node(node.children[i].node, child_path(path, i), registry, out);
  }
}

}  // namespace detail

inline Violations validate_rrt(const RrtNode& tree,
                               const QosRegistry& registry = builtin_registry()) {
  Violations out;
  detail::validate_node(tree, "0", registry, out);
  return out;
}

// --- leaf enumeration ---------------------------------------------------------

struct LeafInfo {
  std::string path;
  SimpleRequirement requirement;
  double path_weight;  // product of edge weights from the root
};

namespace detail {
inline void collect_leaves(const RrtNode& node, const std::string& path, double product,
                           std::vector<LeafInfo>& out) {
  if (node.is_leaf()) {
    out.push_back({path, *node.requirement, product});
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& edge = node.children[i];
    collect_leaves(edge.node, child_path(path, i), product * edge.weight, out);
  }
}
}  // namespace detail

// Depth-first, left-to-right.
inline std::vector<LeafInfo> leaves(const RrtNode& tree) {
  std::vector<LeafInfo> out;
  detail::collect_leaves(tree, "0", 1.0, out);
  return out;
}

// --- JSON -------------------------------------------------------------------

namespace detail {

inline SimpleRequirement requirement_from_json(const json::json& obj, const std::string& where,
                                               const QosRegistry& registry) {
  if (!obj.is_object()) throw SchemaError(where + ".leaf: expected an object");
  auto kind = json::get_string(obj, "kind", where + ".leaf");
  if (kind == "quality") {
    json::require_keys(obj, {"kind", "property"}, where + ".leaf");
    auto property = json::get_string(obj, "property", where + ".leaf");
    if (registry.find(property) == nullptr) {
      throw UnknownKind(where + ": unknown QoS property '" + property + "'");
    }
    return QualityReq{property};
  }
  if (kind == "offer") {
    json::require_keys(obj, {"kind", "offer"}, where + ".leaf");
    return OfferReq{parse_offer_kind(json::get_string(obj, "offer", where + ".leaf"))};
  }
  throw UnknownKind(where + ": unknown leaf kind '" + kind + "'");
}

inline RrtNode node_from_json(const json::json& obj, const std::string& where,
                              const QosRegistry& registry) {
  if (!obj.is_object()) throw SchemaError(where + ": expected an object");
  if (obj.contains("leaf")) {
    json::require_keys(obj, {"leaf"}, where);
    return make_leaf(requirement_from_json(obj.at("leaf"), where, registry));
  }
  json::require_keys(obj, {"op", "children"}, where);
  auto op_token = json::get_string(obj, "op", where);
  Op op;
  if (op_token == "AND") {
    op = Op::And;
  } else if (op_token == "OR") {
    op = Op::Or;
  } else {
    throw UnknownKind(where + ": unknown operator '" + op_token + "'");
  }
  auto children = obj.find("children");
  if (children == obj.end() || !children->is_array()) {
    throw SchemaError(where + ".children: expected an array");
  }
  std::vector<RrtEdge> edges;
  for (std::size_t i = 0; i < children->size(); ++i) {
    const auto& e = (*children)[i];
    std::string here = child_path(where, i);
    json::require_keys(e, {"weight", "node"}, here);
    if (!e.contains("weight")) throw SchemaError(here + ": missing field 'weight'");
    if (!e.contains("node")) throw SchemaError(here + ": missing field 'node'");
    double w = json::get_number(e, "weight", here);
    edges.push_back({w, node_from_json(e.at("node"), here, registry)});
  }
  return make_internal(op, std::move(edges));
}

inline void write_node(json::JsonWriter& w, const RrtNode& node) {
  w.begin_object();
  if (node.is_leaf()) {
    w.key("leaf").begin_object();
    if (const auto* q = std::get_if<QualityReq>(&*node.requirement)) {
      w.key("kind").string("quality");
      w.key("property").string(q->property);
    } else {
      w.key("kind").string("offer");
      w.key("offer").string(to_string(std::get<OfferReq>(*node.requirement).kind));
    }
    w.end_object();
  } else {
    w.key("op").string(to_string(node.op));
    w.key("children").begin_array();
    for (const auto& e : node.children) {
      w.begin_object();
      w.key("weight").number_fixed9(e.weight);
      w.key("node");
      write_node(w, e.node);
      w.end_object();
    }
    w.end_array();
  }
  w.end_object();
}

}  // namespace detail

// Parses a tree document. Shape and tokens are checked here; weight sums and
// arity are left to validate_rrt.
inline RrtNode rrt_from_json(const json::json& doc,
                             const QosRegistry& registry = builtin_registry()) {
  return detail::node_from_json(doc, "0", registry);
}

inline RrtNode parse_rrt(std::string_view text,
                         const QosRegistry& registry = builtin_registry()) {
  return rrt_from_json(json::parse(text), registry);
}

// Single-line document; weights rendered with 9 decimals.
inline std::string serialize_rrt(const RrtNode& tree) {
  json::JsonWriter w;
  detail::write_node(w, tree);
  return w.str();
}

}  // namespace rrtsel
