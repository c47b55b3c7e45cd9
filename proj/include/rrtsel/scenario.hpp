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

// Synthetic travel marketplace: five booking tasks, each served by a number
// of competing providers with randomised QoS values and offers.
//
// Output must be byte-stable across platforms, so only the raw 64-bit stream
// of std::mt19937_64 is used (its output sequence is fixed by the standard);
// the mapping from raw words to doubles and integers is done here instead of
// through <random> distributions, whose algorithms are implementation
// defined.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "rrtsel/error.hpp"
#include "rrtsel/offer.hpp"
#include "rrtsel/qos.hpp"
#include "rrtsel/registry.hpp"

namespace rrtsel::scenario {

struct TaskProfile {
  std::string_view keyword;
  std::string_view label;
  double min_price;
  double max_price;
};

inline constexpr std::array<TaskProfile, 5> kTravelTasks = {{
    {"flight-booking", "Flight Booking", 3000.0, 8000.0},
    {"hotel-booking", "Hotel Booking", 1500.0, 6000.0},
    {"taxi-booking", "Taxi Booking", 20.0, 80.0},
    {"city-tour", "City Tour", 500.0, 2500.0},
    {"dinner-booking", "Dinner Booking", 300.0, 1500.0},
}};

inline constexpr std::string_view kSharedKeyword = "travel";

struct ScenarioSpec {
  std::uint64_t seed = 42;
  int candidates_per_task = 5;
  double offer_density = 0.6;
};

inline Violations validate_spec(const ScenarioSpec& spec) {
  Violations out;
  if (spec.candidates_per_task < 1) {
    out.push_back({"candidates_per_task", "candidates-positive", "must be >= 1"});
  }
  if (!(spec.offer_density >= 0.0 && spec.offer_density <= 1.0)) {
    out.push_back({"offer_density", "density-range", "must be in [0, 1]"});
  }
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Uniform in [lo, hi]; modulo bias is irrelevant at these ranges.
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

 private:
  std::mt19937_64 engine_;
};

// Rounds to `places` decimals; dividing by a power of ten (rather than
// multiplying by a step like 0.1) keeps the shortest printed form clean.
inline double round_places(double v, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(v * scale) / scale;
}

inline double round_half(double v) { return std::round(v * 2.0) / 2.0; }

inline Offer draw_offer(OfferKind kind, double service_price, Rng& rng) {
  Offer o;
  o.kind = kind;
  switch (kind) {
    case OfferKind::CO:
      o.price = std::max(0.01, round_places(service_price * rng.uniform(0.02, 0.2), 2));
      break;
    case OfferKind::DO:
      o.percentage = round_half(rng.uniform(5.0, 30.0));
      break;
    case OfferKind::AO:
      o.price = round_places(rng.uniform(50.0, 1000.0), 2);
      o.quantity = rng.integer(1, 3);
      break;
    case OfferKind::SO:
      o.price = std::max(0.01, round_places(service_price * rng.uniform(0.1, 0.6), 2));
      break;
    case OfferKind::LCO:
      o.price = round_places(rng.uniform(100.0, 1000.0), 2);
      o.period_hours = static_cast<double>(rng.integer(24, 720));
      break;
    case OfferKind::CSO:
      o.frequency = rng.integer(2, 5);
      if (rng.unit() < 0.5) {
        o.price = std::max(0.01, round_places(service_price * rng.uniform(0.2, 1.0), 2));
      }
      break;
    case OfferKind::CDO:
      o.percentage = round_half(rng.uniform(5.0, 25.0));
      o.frequency = rng.integer(2, 5);
      break;
  }
  return o;
}

inline std::string service_id(int number, int total) {
  int width = std::max<int>(3, static_cast<int>(std::to_string(total).size()));
  std::string digits = std::to_string(number);
  return "svc-" + std::string(static_cast<std::size_t>(width) - digits.size(), '0') + digits;
}

// Generates candidates_per_task services for each travel task. Identical
// specs give identical catalogs.
inline Catalog generate(const ScenarioSpec& spec) {
  if (auto violations = validate_spec(spec); !violations.empty()) {
    throw ValidationFailed(std::move(violations));
  }
  Rng rng(spec.seed);
  const int total = spec.candidates_per_task * static_cast<int>(kTravelTasks.size());
  const double per_kind = spec.offer_density / static_cast<double>(kAllOfferKinds.size());

  std::vector<ServiceDescriptor> services;
  int number = 0;
  for (const auto& task : kTravelTasks) {
    for (int i = 0; i < spec.candidates_per_task; ++i) {
      ServiceDescriptor d;
      d.id = service_id(++number, total);
      d.name = std::string(task.label) + " Provider " + std::to_string(i + 1);
      d.task_keywords = {std::string(task.keyword), std::string(kSharedKeyword)};
      const double price = round_places(rng.uniform(task.min_price, task.max_price), 2);
      d.qos["price"] = price;
      d.qos["response_time"] = round_places(rng.uniform(50.0, 2000.0), 0);
      d.qos["reputation"] = round_places(rng.uniform(1.0, 5.0), 1);
      d.qos["reliability"] = round_places(rng.uniform(0.8, 1.0), 3);
      d.qos["availability"] = round_places(rng.uniform(0.8, 1.0), 3);
      for (auto kind : kAllOfferKinds) {
        if (rng.unit() < per_kind) d.offers.push_back(draw_offer(kind, price, rng));
      }
      services.push_back(std::move(d));
    }
  }
  return make_catalog(std::move(services));
}

}  // namespace rrtsel::scenario
