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

// Shared test fixtures: the canonical three-service instance and paths to
// the frozen golden files.

#pragma once

#include <string>
#include <vector>

#include "rrtsel/rrtsel.hpp"

namespace rrtsel::testing {

inline constexpr const char* kCanonicalTask = "travel-package";

inline std::string golden_path(const std::string& name) {
  return std::string(RRTSEL_GOLDEN_DIR) + "/" + name;
}

inline ServiceDescriptor make_service(std::string id, double price,
                                      std::map<std::string, double> extra_qos = {},
                                      std::vector<Offer> offers = {},
                                      std::set<std::string> keywords = {kCanonicalTask}) {
  ServiceDescriptor d;
  d.id = id;
  d.name = "Service " + id;
  d.task_keywords = std::move(keywords);
  d.qos = std::move(extra_qos);
  d.qos["price"] = price;
  d.offers = std::move(offers);
  return d;
}

// s1: price 1000, reputation 4.5, DO 15%
// s2: price 800, reputation 3.0, SO worth 400 and an LCO coupon of 500
// s3: price 1200, reputation 4.0, DO 5%
inline std::vector<ServiceDescriptor> canonical_services() {
  return {
      make_service("s1", 1000.0, {{"reputation", 4.5}},
                   {Offer{.kind = OfferKind::DO, .percentage = 15.0}}),
      make_service("s2", 800.0, {{"reputation", 3.0}},
                   {Offer{.kind = OfferKind::SO, .price = 400.0},
                    Offer{.kind = OfferKind::LCO, .price = 500.0, .period_hours = 720.0}}),
      make_service("s3", 1200.0, {{"reputation", 4.0}},
                   {Offer{.kind = OfferKind::DO, .percentage = 5.0}}),
  };
}

inline Catalog canonical_catalog() { return make_catalog(canonical_services()); }

}  // namespace rrtsel::testing
