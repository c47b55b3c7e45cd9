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

#include <optional>
#include <string>

#include "httplib.h"
#include "rrtsel/broker.hpp"

namespace rrtsel {

inline constexpr const char* kJsonContentType = "application/json";

// Binds the broker endpoints onto `server`. `broker` must outlive it.
inline void mount_routes(httplib::Server& server, Broker& broker) {
  auto send = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, kJsonContentType);
  };

  server.Get("/health", [&broker, send](const httplib::Request&, httplib::Response& res) {
    send(res, broker.handle_health());
  });

  server.Get("/services", [&broker, send](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> keyword;
    if (req.has_param("keyword")) keyword = req.get_param_value("keyword");
    send(res, broker.handle_list(keyword));
  });

  server.Post("/services", [&broker, send](const httplib::Request& req, httplib::Response& res) {
    send(res, broker.handle_register(req.body));
  });

  server.Post("/selection", [&broker, send](const httplib::Request& req, httplib::Response& res) {
    send(res, broker.handle_select(req.body));
  });
}

}  // namespace rrtsel
