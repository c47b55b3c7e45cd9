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

// HTTP broker exposing the registry and selection endpoints.
//
// Example:
//   rrt-broker --catalog travel.json --port 8080
//   curl -s localhost:8080/services?keyword=flight-booking
//
// The catalog path falls back to $RRT_BROKER_CATALOG when --catalog is not
// given. A missing file starts an empty catalog that is created on the first
// registration.

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "httplib.h"
#include "rrtsel/broker.hpp"
#include "rrtsel/http_server.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Service selection broker", "rrt-broker"};
  std::string catalog_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  app.add_option("--catalog", catalog_path, "Catalog document (env RRT_BROKER_CATALOG)");
  app.add_option("--host", host, "Bind address");
  app.add_option("--port", port, "Listen port");
  CLI11_PARSE(app, argc, argv);

  if (catalog_path.empty()) {
    if (const char* env = std::getenv("RRT_BROKER_CATALOG")) catalog_path = env;
  }
  if (catalog_path.empty()) {
    std::cerr << "error: no catalog given (--catalog or RRT_BROKER_CATALOG)\n";
    return 1;
  }

  try {
    auto broker = rrtsel::Broker::open(catalog_path);
    httplib::Server server;
    rrtsel::mount_routes(server, broker);
    std::cerr << "rrt-broker: " << broker.snapshot()->size() << " services from "
              << catalog_path << ", listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
      std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
      return 1;
    }
  } catch (const rrtsel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
