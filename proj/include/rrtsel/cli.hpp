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

// Command line front end.
//
//   rrtsel validate-rrt --rrt FILE
//   rrtsel select --catalog FILE --rrt FILE --task KEYWORD [--report OUT] [--trace]
//   rrtsel profit --offer JSON --price P
//   rrtsel generate --scenario travel --seed N --out FILE
//
// Exit codes: 0 ok, 1 usage or I/O error, 2 validation or schema error,
// 3 no feasible service.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "rrtsel/broker.hpp"
#include "rrtsel/error.hpp"
#include "rrtsel/offer.hpp"
#include "rrtsel/registry.hpp"
#include "rrtsel/rrt.hpp"
#include "rrtsel/scenario.hpp"
#include "rrtsel/selection.hpp"

namespace rrtsel::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInvalid = 2, kNoFeasible = 3 };

namespace detail {

inline void print_violations(std::ostream& out, const Violations& violations) {
  for (const auto& v : violations) {
    out << "violation: " << (v.field.empty() ? "-" : v.field) << " [" << v.rule << "] "
        << v.message << "\n";
  }
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline void print_report(std::ostream& out, const SelectionReport& report, bool trace) {
  std::size_t width = 7;
  for (const auto& r : report.ranked) width = std::max(width, r.service.size());
  out << "task: " << report.task << "\n";
  out << pad("rank", 6) << pad("service", width + 2) << "score\n";
  for (std::size_t i = 0; i < report.ranked.size(); ++i) {
    out << pad(std::to_string(i + 1), 6) << pad(report.ranked[i].service, width + 2)
        << json::fixed9(report.ranked[i].score) << "\n";
  }
  out << "best: " << report.best.value_or("-") << "\n";
  if (!trace) return;
  out << "trace:\n";
  for (const auto& node : report.trace) {
    out << "  " << node.path << ":";
    if (node.scores.empty()) out << " (empty)";
    for (const auto& [id, s] : node.scores) out << " " << id << "=" << json::fixed9(s);
    out << "\n";
  }
}

inline int validate_rrt_cmd(const std::string& rrt_path, std::ostream& out, std::ostream& err) {
  RrtNode tree;
  try {
    tree = parse_rrt(read_file(rrt_path));
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  auto violations = validate_rrt(tree);
  if (!violations.empty()) {
    print_violations(out, violations);
    return kInvalid;
  }
  out << "ok\n";
  return kOk;
}

struct SelectArgs {
  std::string catalog;
  std::string rrt;
  std::string task;
  std::string report;
  bool trace = false;
};

inline int select_cmd(const SelectArgs& args, std::ostream& out, std::ostream& err) {
  Catalog catalog;
  RrtNode tree;
  try {
    catalog = load_catalog(args.catalog);
    tree = parse_rrt(read_file(args.rrt));
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  if (auto violations = validate_rrt(tree); !violations.empty()) {
    print_violations(err, violations);
    return kInvalid;
  }

  SelectionReport report;
  try {
    report = select_for_task(catalog, tree, args.task);
  } catch (const NoFeasibleService& e) {
    err << "error: " << e.what() << "\n";
    return kNoFeasible;
  }
  print_report(out, report, args.trace);
  if (!args.report.empty()) {
    try {
      write_file_atomic(args.report, render_report(report));
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return kOk;
}

inline int profit_cmd(const std::string& offer_text, double price, std::ostream& out,
                      std::ostream& err) {
  Offer offer;
  try {
    offer = parse_offer(offer_text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  if (auto violations = validate_offer(offer); !violations.empty()) {
    print_violations(err, violations);
    return kInvalid;
  }
  try {
    out << json::shortest(profit(offer, price)) << "\n";
  } catch (const InvalidOffer& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}

inline int generate_cmd(const scenario::ScenarioSpec& spec, const std::string& path,
                        std::ostream& out, std::ostream& err) {
  try {
    auto catalog = scenario::generate(spec);
    save_catalog(catalog, path);
    out << "wrote " << catalog.size() << " services to " << path << "\n";
  } catch (const ValidationFailed& e) {
    print_violations(err, e.violations());
    return kInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"QoS- and offer-aware service selection over weighted AND-OR requirement trees",
               "rrtsel"};
  app.require_subcommand(1);

  std::string rrt_path;
  auto* validate = app.add_subcommand("validate-rrt", "Check a requirement tree document");
  validate->add_option("--rrt", rrt_path, "Tree document (JSON)")->required();

  detail::SelectArgs select_args;
  auto* select = app.add_subcommand("select", "Rank the catalog services for a task");
  select->add_option("--catalog", select_args.catalog, "Catalog document")->required();
  select->add_option("--rrt", select_args.rrt, "Tree document")->required();
  select->add_option("--task", select_args.task, "Task keyword")->required();
  select->add_option("--report", select_args.report, "Write the JSON report here");
  select->add_flag("--trace", select_args.trace, "Print per-node score tables");

  std::string offer_text;
  double price = 0.0;
  auto* profit_sub = app.add_subcommand("profit", "Profit score of one offer");
  profit_sub->add_option("--offer", offer_text, "Offer JSON object")->required();
  profit_sub->add_option("--price", price, "Payable price of the service")->required();

  std::string scenario_name;
  std::int64_t seed = 42;
  std::string out_path;
  scenario::ScenarioSpec spec;
  auto* generate = app.add_subcommand("generate", "Write a synthetic catalog");
  generate->add_option("--scenario", scenario_name, "Scenario name")
      ->required()
      ->check(CLI::IsMember({"travel"}));
  generate->add_option("--seed", seed, "Generator seed")->required();
  generate->add_option("--out", out_path, "Output catalog path")->required();
  generate->add_option("--candidates-per-task", spec.candidates_per_task,
                       "Services per task (default 5)");
  generate->add_option("--offer-density", spec.offer_density,
                       "Expected offers per service, in [0, 1] (default 0.6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (*validate) return detail::validate_rrt_cmd(rrt_path, out, err);
  if (*select) return detail::select_cmd(select_args, out, err);
  if (*profit_sub) return detail::profit_cmd(offer_text, price, out, err);
  spec.seed = static_cast<std::uint64_t>(seed);
  return detail::generate_cmd(spec, out_path, out, err);
}

}  // namespace rrtsel::cli
