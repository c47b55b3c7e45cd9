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

// Service-offers: the incentives a provider attaches to a service, and the
// profit score used to compare offers of one kind across candidates.
//
//   kind  fields                         profit
//   ----  -----------------------------  ---------------------------------
//   CO    price (cash amount)            price / offer_price
//   DO    percentage                     percentage * offer_price / 100
//   AO    price (item value), quantity   offer_price / (quantity * price)
//   SO    price (free-service value)     price / offer_price
//   LCO   price (coupon), period_hours   price / offer_price
//   CSO   frequency, price (optional)    price / (frequency * offer_price)
//   CDO   frequency, percentage          percentage * offer_price /
//                                          (frequency * 100)
//
// `offer_price` is always the payable price of the service advertising the
// offer. DO and CDO yield currency amounts while the other rows yield ratios;
// rows are never mixed because a requirement leaf names exactly one kind.
// CSO without a price is valued as one free execution of the service itself.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rrtsel/error.hpp"
#include "rrtsel/json_io.hpp"

namespace rrtsel {

enum class OfferKind { CO, DO, AO, SO, LCO, CSO, CDO };

inline constexpr std::array<OfferKind, 7> kAllOfferKinds = {
    OfferKind::CO,  OfferKind::DO,  OfferKind::AO, OfferKind::SO,
    OfferKind::LCO, OfferKind::CSO, OfferKind::CDO};

constexpr std::string_view to_string(OfferKind kind) {
  switch (kind) {
    case OfferKind::CO: return "CO";
    case OfferKind::DO: return "DO";
    case OfferKind::AO: return "AO";
    case OfferKind::SO: return "SO";
    case OfferKind::LCO: return "LCO";
    case OfferKind::CSO: return "CSO";
    case OfferKind::CDO: return "CDO";
  }
  return "?";
}

inline std::optional<OfferKind> offer_kind_from_string(std::string_view token) {
  for (auto kind : kAllOfferKinds) {
    if (to_string(kind) == token) return kind;
  }
  return std::nullopt;
}

inline OfferKind parse_offer_kind(std::string_view token) {
  if (auto kind = offer_kind_from_string(token)) return *kind;
  throw UnknownKind("unknown offer kind '" + std::string(token) + "'");
}

struct Offer {
  OfferKind kind = OfferKind::CO;
  std::optional<double> price;
  std::optional<double> percentage;
  std::optional<double> period_hours;
  std::optional<std::int64_t> frequency;
  std::optional<std::int64_t> quantity;

  bool operator==(const Offer&) const = default;
};

namespace detail {

enum class Use { Absent, Optional, Required };

struct OfferShape {
  Use price, percentage, period_hours, frequency, quantity;
};

constexpr OfferShape shape_of(OfferKind kind) {
  using enum Use;
  switch (kind) {
    case OfferKind::CO: return {Required, Absent, Absent, Absent, Absent};
    case OfferKind::DO: return {Absent, Required, Absent, Absent, Absent};
    case OfferKind::AO: return {Required, Absent, Absent, Absent, Optional};
    case OfferKind::SO: return {Required, Absent, Absent, Absent, Absent};
    case OfferKind::LCO: return {Required, Absent, Required, Absent, Absent};
    case OfferKind::CSO: return {Optional, Absent, Absent, Required, Absent};
    case OfferKind::CDO: return {Absent, Required, Absent, Required, Absent};
  }
  return {Absent, Absent, Absent, Absent, Absent};
}

template <typename T, typename Check>
void check_field(Violations& out, const std::string& prefix, std::string_view name,
                 OfferKind kind, Use use, const std::optional<T>& value, Check&& check) {
  if (!value) {
    if (use == Use::Required) {
      out.push_back({prefix + std::string(name), "field-missing",
                     std::string(name) + " is required for " + std::string(to_string(kind))});
    }
    return;
  }
  if (use == Use::Absent) {
    out.push_back({prefix + std::string(name), "field-not-applicable",
                   std::string(name) + " does not apply to " + std::string(to_string(kind))});
    return;
  }
  check(out, prefix, name, *value);
}

}  // namespace detail

// Empty result means the offer is valid. `prefix` is prepended to field names
// so callers can report e.g. "offers[2].price".
inline Violations validate_offer(const Offer& offer, const std::string& prefix = "") {
  Violations out;
  const auto shape = detail::shape_of(offer.kind);
  detail::check_field(out, prefix, "price", offer.kind, shape.price, offer.price,
                      [](Violations& o, const std::string& p, std::string_view f, double v) {
                        if (!(std::isfinite(v) && v > 0))
                          o.push_back({p + std::string(f), "price-positive", "price must be > 0"});
                      });
  detail::check_field(out, prefix, "percentage", offer.kind, shape.percentage, offer.percentage,
                      [](Violations& o, const std::string& p, std::string_view f, double v) {
                        if (!(v > 0 && v <= 100))
                          o.push_back({p + std::string(f), "percentage-range", "percentage must be in (0, 100]"});
                      });
  detail::check_field(out, prefix, "period_hours", offer.kind, shape.period_hours,
                      offer.period_hours, [](Violations& o, const std::string& p, std::string_view f, double v) {
                        if (!(std::isfinite(v) && v > 0))
                          o.push_back({p + std::string(f), "period-positive", "period must be > 0"});
                      });
  detail::check_field(out, prefix, "frequency", offer.kind, shape.frequency, offer.frequency,
                      [](Violations& o, const std::string& p, std::string_view f, std::int64_t v) {
                        if (v <= 1) o.push_back({p + std::string(f), "frequency-gt-1", "frequency must be > 1"});
                      });
  detail::check_field(out, prefix, "quantity", offer.kind, shape.quantity, offer.quantity,
                      [](Violations& o, const std::string& p, std::string_view f, std::int64_t v) {
                        if (v < 1) o.push_back({p + std::string(f), "quantity-positive", "quantity must be >= 1"});
                      });
  return out;
}

namespace detail {

// Assumes a validated offer and a positive price.
inline double profit_unchecked(const Offer& offer, double offer_price) {
  switch (offer.kind) {
    case OfferKind::CO:
    case OfferKind::SO:
    case OfferKind::LCO:
      return *offer.price / offer_price;
    case OfferKind::DO:
      return (*offer.percentage * offer_price) / 100.0;
    case OfferKind::AO:
      return offer_price / (static_cast<double>(offer.quantity.value_or(1)) * *offer.price);
    case OfferKind::CSO:
      return offer.price.value_or(offer_price) /
             (static_cast<double>(*offer.frequency) * offer_price);
    case OfferKind::CDO:
      return (*offer.percentage * offer_price) /
             (static_cast<double>(*offer.frequency) * 100.0);
  }
  return 0.0;
}

}  // namespace detail

// Profit score of `offer` for a service whose payable price is `offer_price`.
// Throws InvalidOffer when the offer fails validation or the price is not
// strictly positive.
inline double profit(const Offer& offer, double offer_price) {
  if (auto violations = validate_offer(offer); !violations.empty()) {
    throw InvalidOffer("invalid " + std::string(to_string(offer.kind)) +
                       " offer: " + describe(violations));
  }
  if (!(std::isfinite(offer_price) && offer_price > 0)) {
    throw InvalidOffer("offer price must be > 0");
  }
  return detail::profit_unchecked(offer, offer_price);
}

// --- JSON -------------------------------------------------------------------

inline Offer offer_from_json(const json::json& obj, std::string_view where = "offer") {
  json::require_keys(obj, {"kind", "price", "percentage", "period_hours", "frequency", "quantity"},
                     where);
  Offer offer;
  offer.kind = parse_offer_kind(json::get_string(obj, "kind", where));
  if (obj.contains("price")) offer.price = json::get_number(obj, "price", where);
  if (obj.contains("percentage")) offer.percentage = json::get_number(obj, "percentage", where);
  if (obj.contains("period_hours"))
    offer.period_hours = json::get_number(obj, "period_hours", where);
  if (obj.contains("frequency")) offer.frequency = json::get_integer(obj, "frequency", where);
  if (obj.contains("quantity")) offer.quantity = json::get_integer(obj, "quantity", where);
  return offer;
}

inline Offer parse_offer(std::string_view text) { return offer_from_json(json::parse(text)); }

inline void write_offer(json::JsonWriter& w, const Offer& offer) {
  w.begin_object();
  w.key("kind").string(to_string(offer.kind));
  if (offer.price) w.key("price").number(*offer.price);
  if (offer.percentage) w.key("percentage").number(*offer.percentage);
  if (offer.period_hours) w.key("period_hours").number(*offer.period_hours);
  if (offer.frequency) w.key("frequency").integer(*offer.frequency);
  if (offer.quantity) w.key("quantity").integer(*offer.quantity);
  w.end_object();
}

inline std::string serialize_offer(const Offer& offer) {
  json::JsonWriter w;
  write_offer(w, offer);
  return w.str();
}

}  // namespace rrtsel
