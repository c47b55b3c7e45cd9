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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rrtsel {

// A single broken rule found by one of the validate_* functions. Violations
// are plain data; validation never throws.
struct Violation {
  std::string field;    // dotted path, e.g. "offers[0].frequency" or "0.1"
  std::string rule;     // stable rule id, e.g. "frequency-gt-1"
  std::string message;  // human readable

  bool operator==(const Violation&) const = default;
};

using Violations = std::vector<Violation>;

inline std::string describe(const Violations& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.field.empty() ? v.message : v.field + ": " + v.message;
  }
  return out;
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document text.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

// Well-formed document with the wrong shape (missing/unknown/mistyped field).
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Unrecognised enumeration token: operator, offer kind, leaf kind, property.
class UnknownKind : public SchemaError {
 public:
  using SchemaError::SchemaError;
};

class InvalidOffer : public Error {
 public:
  using Error::Error;
};

class EmptyLeaf : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(std::string id)
      : Error("duplicate service id '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class ValidationFailed : public Error {
 public:
  explicit ValidationFailed(Violations violations)
      : Error("validation failed: " + describe(violations)),
        violations_(std::move(violations)) {}
  const Violations& violations() const noexcept { return violations_; }

 private:
  Violations violations_;
};

// Raised when the root of a requirement tree ends up with no services.
// `node` is the path of the deepest node whose table went empty first.
class NoFeasibleService : public Error {
 public:
  NoFeasibleService(std::string task, std::string node)
      : Error("no feasible service for task '" + task + "' (empty at node " +
              node + ")"),
        task_(std::move(task)),
        node_(std::move(node)) {}
  const std::string& task() const noexcept { return task_; }
  const std::string& node() const noexcept { return node_; }

 private:
  std::string task_;
  std::string node_;
};

}  // namespace rrtsel
