// Copyright 2026 The tritccp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// tritccp_cli: batch front end for the verification, simulation, classical
// analysis and bound tables. Exit codes: 0 all checks pass, 1 a check
// failed, 2 usage error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tritccp/report.hpp"

namespace {

using tritccp::report::json;
using tritccp::report::Report;
using tritccp::report::UsageError;

struct Output {
  std::string format = "json";
  std::string path;
};

void add_output_flags(CLI::App* app, Output& out) {
  app->add_option("--format", out.format, "json or csv (csv for tables only)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_option("--output", out.path, "write to this file instead of standard output");
}

int emit(const Output& out, const std::function<Report()>& command) {
  const auto start = std::chrono::steady_clock::now();
  const Report report = command();
  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  const std::string text = out.format == "csv" ? tritccp::report::to_csv(report)
                                               : tritccp::report::envelope(report, elapsed.count()).dump(2) + "\n";
  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out.path, std::ios::binary);
    if (!file) throw UsageError("cannot open " + out.path);
    file << text;
  }
  if (!report.passed) std::cerr << report.command << ": check failed\n";
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qutrit communication-complexity protocol: simulation and classical analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tritccp::report::kVersion);

  Output out;
  std::function<Report()> command;

  // quantum-verify
  std::vector<unsigned> verify_ks{4, 7};
  double tolerance = tritccp::qudit::kUnitTolerance;
  bool tamper = false;
  auto* verify = app.add_subcommand("quantum-verify", "root-gate lemma checks and the dense class sweep");
  verify->add_option("--k", verify_ks, "party counts for the class sweep (each <= 13)")->delimiter(',')->capture_default_str();
  verify->add_option("--tolerance", tolerance)->capture_default_str();
  verify->add_flag("--debug-tamper-gate", tamper, "perturb the qutrit gate so the checks fail");
  add_output_flags(verify, out);
  verify->callback([&] { command = [&] { return tritccp::report::quantum_verify(verify_ks, tolerance, tamper); }; });

  // quantum-run
  unsigned run_k = 4;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::string engine = "dense";
  bool include_runs = false;
  auto* run = app.add_subcommand("quantum-run", "sample admissible inputs and run the protocol");
  run->add_option("--k", run_k)->capture_default_str();
  run->add_option("--trials", trials)->capture_default_str();
  run->add_option("--seed", seed)->capture_default_str();
  run->add_option("--engine", engine)->check(CLI::IsMember({"dense", "analytic"}))->capture_default_str();
  run->add_flag("--include-runs", include_runs, "emit one record per trial");
  add_output_flags(run, out);
  run->callback([&] {
    command = [&] {
      return tritccp::report::quantum_run(run_k, trials, tritccp::protocol::parse_engine(engine), seed,
                                          include_runs);
    };
  });

  // classical {example, eval, search}
  auto* classical = app.add_subcommand("classical", "exact classical success probabilities");
  classical->require_subcommand(1);
  auto* example = classical->add_subcommand("example", "the k=10 all-zero transcript worked example");
  add_output_flags(example, out);
  example->callback([&] { command = [] { return tritccp::report::classical_example(); }; });

  std::string profile;
  bool long_run = false;
  auto* eval = classical->add_subcommand("eval", "evaluate a strategy profile");
  eval->add_option("--profile,--strategy", profile, "e.g. 001122*4 or 001122*3,012012")->required();
  eval->add_flag("--long-run", long_run, "allow the exhaustive walk up to k=10");
  add_output_flags(eval, out);
  eval->callback([&] { command = [&] { return tritccp::report::classical_eval(profile, long_run); }; });

  unsigned search_k = 13;
  unsigned rounds = 0;
  auto* search = classical->add_subcommand("search", "best homogeneous strategy, optional heterogeneous search");
  search->add_option("--k", search_k)->capture_default_str();
  search->add_option("--seed", seed)->capture_default_str();
  search->add_option("--heterogeneous-rounds", rounds)->capture_default_str();
  add_output_flags(search, out);
  search->callback([&] { command = [&] { return tritccp::report::classical_search(search_k, seed, rounds); }; });

  // bounds
  std::string family = "A";
  std::vector<std::int64_t> js;
  std::string im_rule = "max";
  auto* bounds = app.add_subcommand("bounds", "convergence table of a bound family");
  bounds->add_option("--family", family)->check(CLI::IsMember({"A", "F", "L", "N"}))->capture_default_str();
  bounds->add_option("--j", js, "j values (default 5..60 step 5)")->delimiter(',');
  bounds->add_option("--im-rule", im_rule)->check(CLI::IsMember({"max", "0", "1", "2"}))->capture_default_str();
  add_output_flags(bounds, out);
  bounds->callback([&] {
    if (js.empty())
      for (std::int64_t j = 5; j <= 60; j += 5) js.push_back(j);
    command = [&] {
      return tritccp::report::bounds_table(tritccp::bounds::parse_family(family), js,
                                     tritccp::bounds::ImRule::parse(im_rule));
    };
  });

  // gap-report
  std::vector<unsigned> gap_ks{4, 13, 31};
  auto* gap = app.add_subcommand("gap-report", "quantum vs best homogeneous classical vs 1/3");
  gap->add_option("--k", gap_ks)->delimiter(',')->capture_default_str();
  gap->add_option("--trials", trials)->capture_default_str();
  gap->add_option("--seed", seed)->capture_default_str();
  add_output_flags(gap, out);
  gap->callback([&] { command = [&] { return tritccp::report::gap_report(gap_ks, trials, seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (out.format == "csv" && !(bounds->parsed() || gap->parsed())) {
      throw UsageError("--format csv is available for bounds and gap-report only");
    }
    return emit(out, command);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
