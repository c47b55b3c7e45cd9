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

// Broker request handling, independent of the HTTP transport (see
// http_server.hpp for the route bindings).
//
//   POST /services            register a ServiceDescriptor   201 | 409 | 422
//   GET  /services?keyword=K  list services (all without K)  200
//   POST /selection           run a SelectionRequest         200 | 400 | 404 | 422
//   GET  /health              engine version                 200
//
// Error bodies are {"error": code, "detail": text} with an optional
// "violations" list and, for 404 on /selection, the empty "node".

#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rrtsel/error.hpp"
#include "rrtsel/json_io.hpp"
#include "rrtsel/qos.hpp"
#include "rrtsel/registry.hpp"
#include "rrtsel/rrt.hpp"
#include "rrtsel/selection.hpp"

namespace rrtsel {

// Shared by the CLI and the broker so both produce identical reports.
inline SelectionReport select_for_task(const Catalog& catalog, const RrtNode& tree,
                                       std::string_view task) {
  auto candidates = find_by_keyword(catalog, task);
  return evaluate(tree, candidates, task);
}

struct HttpResponse {
  int status = 200;
  std::string body;
};

namespace detail {

inline void write_violations(json::JsonWriter& w, const Violations& violations) {
  w.key("violations").begin_array();
  for (const auto& v : violations) {
    w.begin_object();
    w.key("field").string(v.field);
    w.key("rule").string(v.rule);
    w.key("message").string(v.message);
    w.end_object();
  }
  w.end_array();
}

inline HttpResponse error_response(int status, std::string_view code, std::string_view detail,
                                   const Violations* violations = nullptr,
                                   const std::string* node = nullptr) {
  json::JsonWriter w;
  w.begin_object();
  w.key("error").string(code);
  w.key("detail").string(detail);
  if (violations != nullptr) write_violations(w, *violations);
  if (node != nullptr) w.key("node").string(*node);
  w.end_object();
  return {status, w.str() + "\n"};
}

}  // namespace detail

class Broker {
 public:
  // Opens the catalog at `path`, or starts empty if the file does not exist.
  static Broker open(const std::filesystem::path& path) {
    if (std::filesystem::exists(path)) return Broker(load_catalog(path), path);
    Catalog empty;
    empty.source_path = path;
    return Broker(std::move(empty), path);
  }

  Broker(Catalog catalog, std::filesystem::path path)
      : catalog_(std::make_shared<const Catalog>(std::move(catalog))), path_(std::move(path)) {}

  Broker(Broker&& other) noexcept
      : catalog_(other.snapshot()), path_(std::move(other.path_)) {}

  std::shared_ptr<const Catalog> snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return catalog_;
  }

  const std::filesystem::path& catalog_path() const noexcept { return path_; }

  HttpResponse handle_health() const {
    json::JsonWriter w;
    w.begin_object();
    w.key("status").string("ok");
    w.key("engine_version").string(kEngineVersion);
    w.end_object();
    return {200, w.str() + "\n"};
  }

  HttpResponse handle_list(const std::optional<std::string>& keyword) const {
    auto catalog = snapshot();
    std::vector<ServiceDescriptor> services;
    if (keyword) {
      services = find_by_keyword(*catalog, *keyword);
    } else {
      for (const auto& [id, d] : catalog->services) services.push_back(d);
    }
    return {200, render_services(services)};
  }

  // The catalog file is rewritten before the new snapshot is published; if
  // writing fails neither the file nor the in-memory catalog change.
  HttpResponse handle_register(std::string_view body) {
    ServiceDescriptor descriptor;
    try {
      descriptor = descriptor_from_json(json::parse(body));
    } catch (const Error& e) {
      return detail::error_response(422, "validation_failed", e.what());
    }

    std::lock_guard write_lock(write_mutex_);
    auto current = snapshot();
    Catalog next;
    try {
      next = register_service(*current, descriptor);
    } catch (const DuplicateId& e) {
      return detail::error_response(409, "duplicate_id", e.what());
    } catch (const ValidationFailed& e) {
      return detail::error_response(422, "validation_failed", e.what(), &e.violations());
    }
    try {
      save_catalog(next, path_);
    } catch (const IoError& e) {
      return detail::error_response(500, "io_error", e.what());
    }
    {
      std::lock_guard lock(snapshot_mutex_);
      catalog_ = std::make_shared<const Catalog>(std::move(next));
    }
    json::JsonWriter w;
    write_descriptor(w, descriptor);
    return {201, w.str() + "\n"};
  }

  // Body: {"task": str, "rrt": RRT, "services"?: [ServiceDescriptor]}. With
  // "services" present the inline list replaces the stored catalog.
  HttpResponse handle_select(std::string_view body) const {
    json::json request;
    std::string task;
    try {
      request = json::parse(body);
      json::require_keys(request, {"task", "rrt", "services"}, "request");
      task = json::get_string(request, "task", "request");
      if (task.empty()) throw SchemaError("request.task: must not be empty");
      if (!request.contains("rrt")) throw SchemaError("request: missing field 'rrt'");
    } catch (const Error& e) {
      return detail::error_response(400, "malformed_request", e.what());
    }

    RrtNode tree;
    try {
      tree = rrt_from_json(request.at("rrt"));
    } catch (const Error& e) {
      return detail::error_response(422, "invalid_rrt", e.what());
    }
    if (auto violations = validate_rrt(tree); !violations.empty()) {
      return detail::error_response(422, "invalid_rrt", describe(violations), &violations);
    }

    std::shared_ptr<const Catalog> catalog;
    if (auto inline_services = request.find("services"); inline_services != request.end()) {
      try {
        catalog = std::make_shared<const Catalog>(
            catalog_from_json(json::json{{"version", kCatalogVersion},
                                         {"services", *inline_services}}));
      } catch (const Error& e) {
        return detail::error_response(422, "validation_failed", e.what());
      }
    } else {
      catalog = snapshot();
    }

    try {
      return {200, render_report(select_for_task(*catalog, tree, task))};
    } catch (const NoFeasibleService& e) {
      return detail::error_response(404, "no_feasible_service", e.what(), nullptr, &e.node());
    }
  }

 private:
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const Catalog> catalog_;
  std::mutex write_mutex_;
  std::filesystem::path path_;
};

}  // namespace rrtsel
