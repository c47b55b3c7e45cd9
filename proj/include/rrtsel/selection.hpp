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

// Bottom-up evaluation of a requirement tree over a candidate set.
//
// Leaves: collect the services that carry the leaf's property (or advertise
// the leaf's offer kind, valued by their best profit), min-max scale the raw
// values and multiply by the leaf's incoming edge weight. Services lacking
// the property or offer are left out of the leaf table entirely.
//
// AND nodes keep services present in every child and score them with the
// node's incoming weight times the sum of child scores. OR nodes keep every
// service seen in any child, scored with the incoming weight times the best
// child score. The root's incoming weight is 1 unless overridden.
//
// Root scores are sorted descending (ties by service id ascending); the first
// entry is the best choice.

#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/json_io.hpp"
#include "rrtsel/offer.hpp"
#include "rrtsel/qos.hpp"
#include "rrtsel/rrt.hpp"
#include "rrtsel/scores.hpp"

namespace rrtsel {

inline constexpr std::string_view kEngineVersion = "rrtsel-engine/1.0.0";

struct RankedService {
  std::string service;
  double score = 0.0;
  bool operator==(const RankedService&) const = default;
};

struct NodeTrace {
  std::string path;
  ScoreList<std::string> scores;  // sorted by service id
  bool operator==(const NodeTrace&) const = default;
};

struct SelectionReport {
  std::string task;
  std::vector<RankedService> ranked;
  std::optional<std::string> best;
  std::vector<NodeTrace> trace;  // pre-order, root first
  std::string engine_version{kEngineVersion};

  bool operator==(const SelectionReport&) const = default;
};

struct EvaluateOptions {
  double root_weight = 1.0;
  bool record_trace = true;
};

// Raw leaf values keyed by position in `candidates`.
inline ScoreList<std::size_t> eligible_indices(const SimpleRequirement& leaf,
                                               std::span<const ServiceDescriptor> candidates,
                                               const QosRegistry& registry = builtin_registry()) {
  ScoreList<std::size_t> out;
  if (const auto* q = std::get_if<QualityReq>(&leaf)) {
    const auto canonical = registry.resolve(q->property).value_or(q->property);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& qos = candidates[i].qos;
      if (auto it = qos.find(canonical); it != qos.end()) out.emplace_back(i, it->second);
    }
    return out;
  }
  const auto kind = std::get<OfferReq>(leaf).kind;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& d = candidates[i];
    auto price = d.qos.find(std::string(kPriceProperty));
    if (price == d.qos.end()) continue;
    std::optional<double> best;
    for (const auto& offer : d.offers) {
      if (offer.kind != kind) continue;
      double p = detail::profit_unchecked(offer, price->second);
      best = best ? std::max(*best, p) : p;
    }
    if (best) out.emplace_back(i, *best);
  }
  return out;
}

// Same as eligible_indices, keyed by service id.
inline ScoreList<std::string> eligible_candidates(
    const SimpleRequirement& leaf, std::span<const ServiceDescriptor> candidates,
    const QosRegistry& registry = builtin_registry()) {
  ScoreList<std::string> out;
  for (const auto& [i, v] : eligible_indices(leaf, candidates, registry)) {
    out.emplace_back(candidates[i].id, v);
  }
  return sorted_by_key(std::move(out));
}

inline std::vector<RankedService> rank_root(const ScoreList<std::string>& root) {
  std::vector<RankedService> ranked;
  ranked.reserve(root.size());
  for (const auto& [id, score] : root) ranked.push_back({id, score});
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.service < b.service;
  });
  return ranked;
}

namespace detail {

class Evaluator {
 public:
  Evaluator(std::span<const ServiceDescriptor> sorted, const QosRegistry& registry,
            bool record_trace)
      : candidates_(sorted), registry_(registry), record_trace_(record_trace) {}

  ScoreList<std::size_t> run(const RrtNode& node, const std::string& path, double weight) {
    std::size_t slot = trace_.size();
    if (record_trace_) trace_.push_back({path, {}});

    ScoreList<std::size_t> table;
    if (node.is_leaf()) {
      table = rank_leaf(normalized(*node.requirement), weight);
    } else {
      std::vector<ScoreList<std::size_t>> children;
      children.reserve(node.children.size());
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& edge = node.children[i];
        children.push_back(run(edge.node, child_path(path, i), edge.weight));
      }
      std::span<const ScoreList<std::size_t>> view(children);
      table = node.op == Op::And ? combine_and(view, weight) : combine_or(view, weight);
    }

    if (table.empty() && !first_empty_) first_empty_ = path;
    if (record_trace_) trace_[slot].scores = to_ids(table);
    return table;
  }

  ScoreList<std::string> to_ids(const ScoreList<std::size_t>& table) const {
    ScoreList<std::string> out;
    out.reserve(table.size());
    for (const auto& [i, s] : table) out.emplace_back(candidates_[i].id, s);
    return out;
  }

  // Leaves naming the same requirement share one normalised table.
  const ScoreList<std::size_t>& normalized(const SimpleRequirement& req) {
    for (const auto& [cached_req, table] : cache_) {
      if (cached_req == req) return table;
    }
    auto raw = eligible_indices(req, candidates_, registry_);
    ScoreList<std::size_t> table;
    if (!raw.empty()) table = scale_leaf(leaf_direction(req, registry_), raw);
    return cache_.emplace_back(req, std::move(table)).second;
  }

  std::vector<NodeTrace> take_trace() { return std::move(trace_); }
  const std::optional<std::string>& first_empty() const { return first_empty_; }

 private:
  std::span<const ServiceDescriptor> candidates_;
  const QosRegistry& registry_;
  bool record_trace_;
  std::vector<NodeTrace> trace_;
  std::optional<std::string> first_empty_;
  std::vector<std::pair<SimpleRequirement, ScoreList<std::size_t>>> cache_;
};

}  // namespace detail

// Throws ValidationFailed for an invalid tree, DuplicateId for repeated
// candidate ids and NoFeasibleService when the root table is empty.
inline SelectionReport evaluate(const RrtNode& tree, std::span<const ServiceDescriptor> candidates,
                                std::string_view task, const EvaluateOptions& options = {},
                                const QosRegistry& registry = builtin_registry()) {
  if (auto violations = validate_rrt(tree, registry); !violations.empty()) {
    throw ValidationFailed(std::move(violations));
  }

  // Sorting candidates by id makes index order agree with id order, so every
  // index-keyed table is also id-ordered.
  std::vector<ServiceDescriptor> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].id == sorted[i - 1].id) throw DuplicateId(sorted[i].id);
  }

  detail::Evaluator ev(sorted, registry, options.record_trace);
  auto root = ev.run(tree, "0", options.root_weight);
  if (root.empty()) {
    throw NoFeasibleService(std::string(task), ev.first_empty().value_or("0"));
  }

  SelectionReport report;
  report.task = std::string(task);
  report.ranked = rank_root(ev.to_ids(root));
  report.best = report.ranked.front().service;
  report.trace = ev.take_trace();
  return report;
}

// --- JSON -------------------------------------------------------------------

// Single line, newline terminated. Scores use 9 decimals.
inline std::string render_report(const SelectionReport& report) {
  json::JsonWriter w;
  w.begin_object();
  w.key("task").string(report.task);
  w.key("best");
  if (report.best) {
    w.string(*report.best);
  } else {
    w.null();
  }
  w.key("ranked").begin_array();
  for (const auto& r : report.ranked) {
    w.begin_object();
    w.key("service").string(r.service);
    w.key("score").number_fixed9(r.score);
    w.end_object();
  }
  w.end_array();
  w.key("trace").begin_object();
  for (const auto& node : report.trace) {
    w.key(node.path).begin_object();
    for (const auto& [id, s] : node.scores) w.key(id).number_fixed9(s);
    w.end_object();
  }
  w.end_object();
  w.key("engine_version").string(report.engine_version);
  w.end_object();
  return w.str() + "\n";
}

}  // namespace rrtsel
