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

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/json_io.hpp"
#include "rrtsel/offer.hpp"

namespace rrtsel {

enum class Direction { LowerBetter, HigherBetter };

constexpr std::string_view to_string(Direction d) {
  return d == Direction::LowerBetter ? "lower-better" : "higher-better";
}

struct QosProperty {
  std::string name;
  Direction direction = Direction::HigherBetter;
  std::string units;
  std::vector<std::string> aliases;

  bool operator==(const QosProperty&) const = default;
};

inline constexpr std::string_view kPriceProperty = "price";

inline std::vector<QosProperty> builtin_properties() {
  return {
      {"price", Direction::LowerBetter, "currency", {}},
      {"response_time", Direction::LowerBetter, "ms", {}},
      {"reputation", Direction::HigherBetter, "score 0-5", {"popularity", "PO"}},
      {"reliability", Direction::HigherBetter, "ratio 0-1", {}},
      {"availability", Direction::HigherBetter, "ratio 0-1", {}},
  };
}

// Lookup over a property list with alias resolution.
class QosRegistry {
 public:
  explicit QosRegistry(std::vector<QosProperty> properties) : properties_(std::move(properties)) {}

  const std::vector<QosProperty>& properties() const noexcept { return properties_; }

  const QosProperty* find(std::string_view name) const {
    for (const auto& p : properties_) {
      if (p.name == name) return &p;
    }
    for (const auto& p : properties_) {
      if (std::find(p.aliases.begin(), p.aliases.end(), name) != p.aliases.end()) return &p;
    }
    return nullptr;
  }

  // Canonical name for `name`, or nullopt if it is not registered.
  std::optional<std::string> resolve(std::string_view name) const {
    if (const auto* p = find(name)) return p->name;
    return std::nullopt;
  }

 private:
  std::vector<QosProperty> properties_;
};

inline const QosRegistry& builtin_registry() {
  static const QosRegistry registry(builtin_properties());
  return registry;
}

struct ServiceDescriptor {
  std::string id;
  std::string name;
  std::set<std::string> task_keywords;
  std::map<std::string, double> qos;
  std::vector<Offer> offers;

  bool operator==(const ServiceDescriptor&) const = default;
};

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline Violations validate_descriptor(const ServiceDescriptor& d,
                                      const QosRegistry& registry = builtin_registry()) {
  Violations out;
  if (d.id.empty()) out.push_back({"id", "id-non-empty", "id must not be empty"});
  if (d.task_keywords.empty()) {
    out.push_back({"task_keywords", "keywords-non-empty", "at least one task keyword is required"});
  }
  for (const auto& k : d.task_keywords) {
    if (k.empty() || k != to_lower(k)) {
      out.push_back({"task_keywords", "keyword-lowercase",
                     "keyword '" + k + "' must be non-empty lowercase"});
    }
  }
  auto price = d.qos.find(std::string(kPriceProperty));
  if (price == d.qos.end()) {
    out.push_back({"qos.price", "price-mandatory", "price is mandatory"});
  } else if (!(std::isfinite(price->second) && price->second > 0)) {
    out.push_back({"qos.price", "price-positive", "price must be > 0"});
  }
  for (const auto& [key, value] : d.qos) {
    const auto* prop = registry.find(key);
    if (prop == nullptr) {
      out.push_back({"qos." + key, "unknown-property", "unknown QoS property '" + key + "'"});
    } else if (prop->name != key) {
      out.push_back({"qos." + key, "non-canonical-property",
                     "use the canonical name '" + prop->name + "'"});
    } else if (key != kPriceProperty && !std::isfinite(value)) {
      out.push_back({"qos." + key, "value-finite", "value must be finite"});
    }
  }
  for (std::size_t i = 0; i < d.offers.size(); ++i) {
    auto sub = validate_offer(d.offers[i], "offers[" + std::to_string(i) + "].");
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

// Stored value of `property` (aliases resolved), or nullopt when the service
// does not declare it.
inline std::optional<double> qos_value(const ServiceDescriptor& d, std::string_view property,
                                       const QosRegistry& registry = builtin_registry()) {
  auto canonical = registry.resolve(property).value_or(std::string(property));
  if (auto it = d.qos.find(canonical); it != d.qos.end()) return it->second;
  return std::nullopt;
}

// --- JSON -------------------------------------------------------------------

inline ServiceDescriptor descriptor_from_json(const json::json& obj,
                                              std::string_view where = "service") {
  json::require_keys(obj, {"id", "name", "task_keywords", "qos", "offers"}, where);
  ServiceDescriptor d;
  d.id = json::get_string(obj, "id", where);
  std::string here = std::string(where) + " '" + d.id + "'";
  d.name = obj.contains("name") ? json::get_string(obj, "name", here) : std::string();

  auto kw = obj.find("task_keywords");
  if (kw == obj.end() || !kw->is_array()) {
    throw SchemaError(here + ".task_keywords: expected an array of strings");
  }
  for (const auto& k : *kw) {
    if (!k.is_string()) throw SchemaError(here + ".task_keywords: expected an array of strings");
    d.task_keywords.insert(k.get<std::string>());
  }

  auto qos = obj.find("qos");
  if (qos == obj.end() || !qos->is_object()) {
    throw SchemaError(here + ".qos: expected an object");
  }
  for (const auto& [key, value] : qos->items()) {
    if (!value.is_number()) throw SchemaError(here + ".qos." + key + ": expected a number");
    d.qos.emplace(key, value.get<double>());
  }

  if (auto offers = obj.find("offers"); offers != obj.end()) {
    if (!offers->is_array()) throw SchemaError(here + ".offers: expected an array");
    for (std::size_t i = 0; i < offers->size(); ++i) {
      d.offers.push_back(
          offer_from_json((*offers)[i], here + ".offers[" + std::to_string(i) + "]"));
    }
  }
  return d;
}

inline void write_descriptor(json::JsonWriter& w, const ServiceDescriptor& d) {
  w.begin_object();
  w.key("id").string(d.id);
  w.key("name").string(d.name);
  w.key("task_keywords").begin_array();
  for (const auto& k : d.task_keywords) w.string(k);
  w.end_array();
  w.key("qos").begin_object();
  for (const auto& [k, v] : d.qos) w.key(k).number(v);
  w.end_object();
  w.key("offers").begin_array();
  for (const auto& o : d.offers) write_offer(w, o);
  w.end_array();
  w.end_object();
}

}  // namespace rrtsel
