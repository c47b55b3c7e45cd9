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

// File-backed service catalog. A Catalog is a value: register_service
// returns a new snapshot rather than mutating in place.
//
// Document: {"version": 1, "services": [ServiceDescriptor, ...]}, written
// with services sorted by id and two-space indentation.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/json_io.hpp"
#include "rrtsel/qos.hpp"

namespace rrtsel {

inline constexpr int kCatalogVersion = 1;

struct Catalog {
  std::map<std::string, ServiceDescriptor> services;
  std::optional<std::filesystem::path> source_path;
  bool dirty = false;

  std::size_t size() const noexcept { return services.size(); }

  // Structural equality: the services only.
  bool operator==(const Catalog& other) const { return services == other.services; }
};

// Validates `d` and throws SchemaError naming the service and first bad field.
inline void require_valid(const ServiceDescriptor& d, const QosRegistry& registry) {
  auto violations = validate_descriptor(d, registry);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw SchemaError("service '" + d.id + "': " + v.field + ": " + v.message);
  }
}

inline Catalog make_catalog(std::vector<ServiceDescriptor> services,
                            const QosRegistry& registry = builtin_registry()) {
  Catalog c;
  for (auto& d : services) {
    require_valid(d, registry);
    std::string id = d.id;
    if (!c.services.emplace(id, std::move(d)).second) throw DuplicateId(id);
  }
  return c;
}

inline Catalog catalog_from_json(const json::json& doc,
                                 const QosRegistry& registry = builtin_registry()) {
  json::require_keys(doc, {"version", "services"}, "catalog");
  if (!doc.contains("version")) throw SchemaError("catalog: missing field 'version'");
  if (json::get_integer(doc, "version", "catalog") != kCatalogVersion) {
    throw SchemaError("catalog: unsupported version");
  }
  auto services = doc.find("services");
  if (services == doc.end() || !services->is_array()) {
    throw SchemaError("catalog.services: expected an array");
  }
  std::vector<ServiceDescriptor> parsed;
  parsed.reserve(services->size());
  for (const auto& s : *services) parsed.push_back(descriptor_from_json(s));
  return make_catalog(std::move(parsed), registry);
}

inline Catalog parse_catalog(std::string_view text,
                             const QosRegistry& registry = builtin_registry()) {
  return catalog_from_json(json::parse(text), registry);
}

inline std::string render_services(const std::vector<ServiceDescriptor>& services,
                                   std::string_view key = "services") {
  json::JsonWriter w(2);
  w.begin_object();
  w.key(key).begin_array();
  for (const auto& d : services) write_descriptor(w, d);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

inline std::string render_catalog(const Catalog& catalog) {
  json::JsonWriter w(2);
  w.begin_object();
  w.key("version").integer(kCatalogVersion);
  w.key("services").begin_array();
  for (const auto& [id, d] : catalog.services) write_descriptor(w, d);
  w.end_array();
  w.end_object();
  return w.str() + "\n";
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

// Writes through a sibling temp file and renames it over `path`, so readers
// never observe a half-written document.
inline void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("error writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace '" + path.string() + "'");
  }
}

inline Catalog load_catalog(const std::filesystem::path& path,
                            const QosRegistry& registry = builtin_registry()) {
  Catalog c = parse_catalog(read_file(path), registry);
  c.source_path = path;
  c.dirty = false;
  return c;
}

inline void save_catalog(Catalog& catalog, const std::filesystem::path& path) {
  write_file_atomic(path, render_catalog(catalog));
  catalog.source_path = path;
  catalog.dirty = false;
}

inline Catalog register_service(const Catalog& catalog, ServiceDescriptor descriptor,
                                const QosRegistry& registry = builtin_registry()) {
  if (auto violations = validate_descriptor(descriptor, registry); !violations.empty()) {
    throw ValidationFailed(std::move(violations));
  }
  if (catalog.services.contains(descriptor.id)) throw DuplicateId(descriptor.id);
  Catalog next = catalog;
  std::string id = descriptor.id;
  next.services.emplace(std::move(id), std::move(descriptor));
  next.dirty = true;
  return next;
}

// Case-insensitive exact keyword match, sorted by id.
inline std::vector<ServiceDescriptor> find_by_keyword(const Catalog& catalog,
                                                      std::string_view keyword) {
  const auto needle = to_lower(keyword);
  std::vector<ServiceDescriptor> out;
  for (const auto& [id, d] : catalog.services) {
    for (const auto& k : d.task_keywords) {
      if (to_lower(k) == needle) {
        out.push_back(d);
        break;
      }
    }
  }
  return out;
}

}  // namespace rrtsel
