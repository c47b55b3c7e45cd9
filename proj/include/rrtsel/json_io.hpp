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

// JSON plumbing shared by the document formats. Parsing goes through
// nlohmann::json; emission uses JsonWriter so that field order and number
// rendering are fixed by us rather than by the library.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rrtsel/error.hpp"

namespace rrtsel::json {

using nlohmann::json;

inline json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("malformed JSON: ") + e.what());
  }
}

// Fixed-point rendering used for weights and scores.
inline std::string fixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

// Shortest text that parses back to exactly `v`.
inline std::string shortest(double v) { return json(v).dump(); }

class JsonWriter {
 public:
  // indent == 0 gives a single-line document.
  explicit JsonWriter(int indent = 0) : indent_(indent) {}

  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(std::string_view k) {
    separate();
    out_ += json(std::string(k)).dump();
    out_ += indent_ > 0 ? ": " : ":";
    after_key_ = true;
    return *this;
  }

  JsonWriter& string(std::string_view s) {
    return raw(json(std::string(s)).dump());
  }
  JsonWriter& integer(std::int64_t v) { return raw(std::to_string(v)); }
  JsonWriter& number(double v) { return raw(shortest(v)); }
  JsonWriter& number_fixed9(double v) { return raw(fixed9(v)); }
  JsonWriter& null() { return raw("null"); }

  // Emits an already-rendered JSON token.
  JsonWriter& raw(std::string_view token) {
    separate();
    out_ += token;
    return *this;
  }

  std::string str() const { return out_; }

 private:
  JsonWriter& open(char c) {
    separate();
    out_ += c;
    first_.push_back(true);
    return *this;
  }

  JsonWriter& close(char c) {
    bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    out_ += c;
    return *this;
  }

  void separate() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (first_.empty()) return;
    if (!first_.back()) out_ += ',';
    first_.back() = false;
    newline();
  }

  void newline() {
    if (indent_ <= 0) return;
    out_ += '\n';
    out_.append(first_.size() * static_cast<std::size_t>(indent_), ' ');
  }

  int indent_;
  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

// Throws SchemaError if `obj` is not an object or carries a key outside
// `allowed`.
inline void require_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  if (!obj.is_object()) {
    throw SchemaError(std::string(where) + ": expected a JSON object");
  }
  for (const auto& [k, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == k;
    if (!known) {
      throw SchemaError(std::string(where) + ": unknown field '" + k + "'");
    }
  }
}

inline double get_number(const json& obj, std::string_view key, std::string_view where) {
  const auto& v = obj.at(std::string(key));
  if (!v.is_number()) {
    throw SchemaError(std::string(where) + "." + std::string(key) + ": expected a number");
  }
  return v.get<double>();
}

inline std::int64_t get_integer(const json& obj, std::string_view key, std::string_view where) {
  const auto& v = obj.at(std::string(key));
  if (v.is_number_unsigned()) {
    auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) {
      throw SchemaError(std::string(where) + "." + std::string(key) + ": integer out of range");
    }
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) {
    throw SchemaError(std::string(where) + "." + std::string(key) + ": expected an integer");
  }
  return v.get<std::int64_t>();
}

inline std::string get_string(const json& obj, std::string_view key, std::string_view where) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) {
    throw SchemaError(std::string(where) + ": missing field '" + std::string(key) + "'");
  }
  if (!it->is_string()) {
    throw SchemaError(std::string(where) + "." + std::string(key) + ": expected a string");
  }
  return it->get<std::string>();
}

}  // namespace rrtsel::json
