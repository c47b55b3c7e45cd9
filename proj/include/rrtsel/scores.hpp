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

// Per-node score tables and the four primitives the evaluator is built from:
// leaf scaling (min-max), leaf ranking (edge weight), AND combination
// (intersection, weighted sum) and OR combination (union, weighted max).
//
// A ScoreList is a flat map: a vector of (key, score) pairs sorted by key
// with unique keys. The evaluator instantiates it with candidate indices;
// tests and callers working with ids use std::string.

#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/qos.hpp"
#include "rrtsel/rrt.hpp"

namespace rrtsel {

template <typename Key>
using ScoreList = std::vector<std::pair<Key, double>>;

template <typename Key>
ScoreList<Key> sorted_by_key(ScoreList<Key> list) {
  std::sort(list.begin(), list.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return list;
}

template <typename Key>
const double* find_score(const ScoreList<Key>& list, const Key& key) {
  auto it = std::lower_bound(list.begin(), list.end(), key,
                             [](const auto& entry, const Key& k) { return entry.first < k; });
  if (it == list.end() || it->first != key) return nullptr;
  return &it->second;
}

// Offer leaves always prefer more profit; quality leaves follow the
// property's registered direction.
inline Direction leaf_direction(const SimpleRequirement& req,
                                const QosRegistry& registry = builtin_registry()) {
  if (const auto* q = std::get_if<QualityReq>(&req)) {
    if (const auto* prop = registry.find(q->property)) return prop->direction;
    throw UnknownKind("unknown QoS property '" + q->property + "'");
  }
  return Direction::HigherBetter;
}

// Min-max normalisation into [0, 1], flipped for LowerBetter. When every raw
// value is equal each candidate gets 1.0.
template <typename Key>
ScoreList<Key> scale_leaf(Direction direction, const ScoreList<Key>& values) {
  if (values.empty()) throw EmptyLeaf("cannot scale a leaf with no eligible services");
  auto [lo_it, hi_it] = std::minmax_element(
      values.begin(), values.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  const double lo = lo_it->second;
  const double hi = hi_it->second;
  const double span = hi - lo;

  ScoreList<Key> out;
  out.reserve(values.size());
  for (const auto& [key, v] : values) {
    double n = 1.0;
    if (span > 0.0) {
      n = direction == Direction::LowerBetter ? (hi - v) / span : (v - lo) / span;
    }
    out.emplace_back(key, n);
  }
  return sorted_by_key(std::move(out));
}

template <typename Key>
ScoreList<Key> scale_leaf(const SimpleRequirement& leaf, const ScoreList<Key>& values,
                          const QosRegistry& registry = builtin_registry()) {
  return scale_leaf(leaf_direction(leaf, registry), values);
}

template <typename Key>
ScoreList<Key> rank_leaf(ScoreList<Key> normalized, double edge_weight) {
  for (auto& entry : normalized) entry.second *= edge_weight;
  return normalized;
}

// Keys present in every child; score = edge_weight * sum of child scores.
template <typename Key>
ScoreList<Key> combine_and(std::span<const ScoreList<Key>> children, double edge_weight) {
  ScoreList<Key> out;
  if (children.empty()) return out;
  std::vector<std::size_t> cursor(children.size(), 0);
  for (const auto& [key, first_score] : children[0]) {
    double sum = first_score;
    bool everywhere = true;
    for (std::size_t c = 1; c < children.size() && everywhere; ++c) {
      const auto& list = children[c];
      auto& i = cursor[c];
      while (i < list.size() && list[i].first < key) ++i;
      if (i < list.size() && list[i].first == key) {
        sum += list[i].second;
      } else {
        everywhere = false;
      }
    }
    if (everywhere) out.emplace_back(key, edge_weight * sum);
  }
  return out;
}

// Keys present in any child; score = edge_weight * best child score.
template <typename Key>
ScoreList<Key> combine_or(std::span<const ScoreList<Key>> children, double edge_weight) {
  ScoreList<Key> out;
  std::vector<std::size_t> cursor(children.size(), 0);
  for (;;) {
    const Key* next = nullptr;
    for (std::size_t c = 0; c < children.size(); ++c) {
      if (cursor[c] < children[c].size()) {
        const Key& k = children[c][cursor[c]].first;
        if (next == nullptr || k < *next) next = &k;
      }
    }
    if (next == nullptr) break;
    const Key key = *next;
    double best = 0.0;
    bool seen = false;
    for (std::size_t c = 0; c < children.size(); ++c) {
      if (cursor[c] < children[c].size() && children[c][cursor[c]].first == key) {
        double s = children[c][cursor[c]].second;
        best = seen ? std::max(best, s) : s;
        seen = true;
        ++cursor[c];
      }
    }
    out.emplace_back(key, edge_weight * best);
  }
  return out;
}

template <typename Key>
ScoreList<Key> combine_and(std::initializer_list<ScoreList<Key>> children, double edge_weight) {
  std::vector<ScoreList<Key>> v(children);
  return combine_and(std::span<const ScoreList<Key>>(v), edge_weight);
}

template <typename Key>
ScoreList<Key> combine_or(std::initializer_list<ScoreList<Key>> children, double edge_weight) {
  std::vector<ScoreList<Key>> v(children);
  return combine_or(std::span<const ScoreList<Key>>(v), edge_weight);
}

}  // namespace rrtsel
