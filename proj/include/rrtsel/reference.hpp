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

// Reference evaluator. A literal, slow restatement of the selection rules
// used as a test oracle for evaluate(). It deliberately shares no code with
// the scoring primitives in scores.hpp or the profit function in offer.hpp:
// every table is rebuilt from scratch as a std::map, the profit rows are
// written out again, and nothing is cached.

#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/qos.hpp"
#include "rrtsel/rrt.hpp"
#include "rrtsel/selection.hpp"

namespace rrtsel::reference {

using Table = std::map<std::string, double>;

inline double offer_profit(const Offer& o, double payable) {
  const double price = o.price.value_or(payable);
  const double pct = o.percentage.value_or(0.0);
  const double freq = static_cast<double>(o.frequency.value_or(1));
  const double qty = static_cast<double>(o.quantity.value_or(1));
  if (o.kind == OfferKind::CO) return price / payable;
  if (o.kind == OfferKind::DO) return pct * payable / 100.0;
  if (o.kind == OfferKind::AO) return payable / (qty * price);
  if (o.kind == OfferKind::SO) return price / payable;
  if (o.kind == OfferKind::LCO) return price / payable;
  if (o.kind == OfferKind::CSO) return price / (freq * payable);
  return pct * payable / (freq * 100.0);  // CDO
}

inline Table raw_values(const SimpleRequirement& req,
                        std::span<const ServiceDescriptor> candidates) {
  Table raw;
  for (const auto& svc : candidates) {
    if (std::holds_alternative<QualityReq>(req)) {
      auto value = qos_value(svc, std::get<QualityReq>(req).property);
      if (value.has_value()) raw[svc.id] = *value;
      continue;
    }
    auto payable = qos_value(svc, "price");
    if (!payable.has_value()) continue;
    bool found = false;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& offer : svc.offers) {
      if (offer.kind == std::get<OfferReq>(req).kind) {
        found = true;
        best = std::max(best, offer_profit(offer, *payable));
      }
    }
    if (found) raw[svc.id] = best;
  }
  return raw;
}

inline bool lower_is_better(const SimpleRequirement& req) {
  if (!std::holds_alternative<QualityReq>(req)) return false;
  const auto* prop = builtin_registry().find(std::get<QualityReq>(req).property);
  return prop != nullptr && prop->direction == Direction::LowerBetter;
}

inline Table leaf_table(const SimpleRequirement& req, double weight,
                        std::span<const ServiceDescriptor> candidates) {
  Table raw = raw_values(req, candidates);
  Table out;
  if (raw.empty()) return out;
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  for (const auto& [id, v] : raw) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  for (const auto& [id, v] : raw) {
    double normalized;
    if (mx == mn) {
      normalized = 1.0;
    } else if (lower_is_better(req)) {
      normalized = (mx - v) / (mx - mn);
    } else {
      normalized = (v - mn) / (mx - mn);
    }
    out[id] = weight * normalized;
  }
  return out;
}

struct Node {
  std::string path;
  Table table;
};

// Appends every node of the subtree in pre-order and returns the subtree
// root's table.
inline Table node_table(const RrtNode& node, const std::string& path, double weight,
                        std::span<const ServiceDescriptor> candidates, std::vector<Node>& nodes) {
  const std::size_t slot = nodes.size();
  nodes.push_back({path, {}});
  Table table;
  if (node.is_leaf()) {
    table = leaf_table(*node.requirement, weight, candidates);
  } else {
    std::vector<Table> child_tables;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      child_tables.push_back(node_table(node.children[i].node, path + "." + std::to_string(i),
                                        node.children[i].weight, candidates, nodes));
    }
    std::set<std::string> ids;
    for (const auto& t : child_tables) {
      for (const auto& [id, s] : t) ids.insert(id);
    }
    for (const auto& id : ids) {
      if (node.op == Op::And) {
        bool in_all = true;
        double sum = 0.0;
        for (const auto& t : child_tables) {
          auto it = t.find(id);
          if (it == t.end()) {
            in_all = false;
            break;
          }
          sum += it->second;
        }
        if (in_all) table[id] = weight * sum;
      } else {
        double best = -1.0;
        for (const auto& t : child_tables) {
          auto it = t.find(id);
          if (it != t.end() && it->second > best) best = it->second;
        }
        table[id] = weight * best;
      }
    }
  }
  nodes[slot].table = table;
  return table;
}

inline SelectionReport evaluate(const RrtNode& tree, std::span<const ServiceDescriptor> candidates,
                                std::string_view task, double root_weight = 1.0) {
  if (auto violations = validate_rrt(tree); !violations.empty()) {
    throw ValidationFailed(std::move(violations));
  }
  std::set<std::string> seen;
  for (const auto& svc : candidates) {
    if (!seen.insert(svc.id).second) throw DuplicateId(svc.id);
  }

  std::vector<Node> nodes;
  Table root = node_table(tree, "0", root_weight, candidates, nodes);
  if (root.empty()) {
    // Post-order: first node whose table is empty.
    std::string culprit = "0";
    std::function<bool(const RrtNode&, const std::string&)> visit =
        [&](const RrtNode& n, const std::string& p) {
          for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (visit(n.children[i].node, p + "." + std::to_string(i))) return true;
          }
          for (const auto& node : nodes) {
            if (node.path == p && node.table.empty()) {
              culprit = p;
              return true;
            }
          }
          return false;
        };
    visit(tree, "0");
    throw NoFeasibleService(std::string(task), culprit);
  }

  SelectionReport report;
  report.task = std::string(task);
  for (const auto& [id, score] : root) report.ranked.push_back({id, score});
  std::sort(report.ranked.begin(), report.ranked.end(),
            [](const RankedService& a, const RankedService& b) {
              return a.score > b.score || (a.score == b.score && a.service < b.service);
            });
  report.best = report.ranked.front().service;
  for (const auto& node : nodes) {
    NodeTrace t{node.path, {}};
    for (const auto& [id, s] : node.table) t.scores.emplace_back(id, s);
    report.trace.push_back(std::move(t));
  }
  return report;
}

}  // namespace rrtsel::reference
