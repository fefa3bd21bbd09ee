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

/**
 * @file
 * Report envelopes for the command-line front end and the acceptance suite.
 *
 * Each command returns a Report (command, config echo, payload, pass flag).
 * The envelope adds the artifact version, a SHA-256 digest of the hashed
 * region {command, config, payload} and the wall-clock duration, which is
 * kept out of the digest. JSON objects are key-sorted, so the hashed region
 * depends only on the command, its config and the seed.
 */

#pragma once

#include <openssl/evp.h>

#include <complex>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tritccp/bounds.hpp"
#include "tritccp/classical_analysis.hpp"
#include "tritccp/quantum_protocol.hpp"

namespace tritccp::report {

using nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr unsigned kDenseLimit = 13;
inline constexpr const char* kSeedScheme =
    "trial t draws from mt19937_64 seeded with splitmix64(seed + (t + 1) * 0x9E3779B97F4A7C15)";

/// Bad arguments: maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Report {
  std::string command;
  json config = json::object();
  json payload = json::object();
  bool passed = true;
};

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

/// Canonical serialization of the part of a report covered by the digest.
inline std::string hashed_region(const Report& report) {
  return json{{"command", report.command}, {"config", report.config}, {"payload", report.payload}}.dump();
}

inline json envelope(const Report& report, double duration_ms) {
  return json{{"command", report.command},
              {"version", kVersion},
              {"config", report.config},
              {"payload", report.payload},
              {"payload_sha256", sha256_hex(hashed_region(report))},
              {"passed", report.passed},
              {"duration_ms", duration_ms}};
}

/// Fixed 17-significant-digit rendering for CSV cells.
inline std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

inline std::string big_string(const BigCount& v) { return v.str(); }

inline json rational_json(const Rational& r) {
  return json{{"num", big_string(numerator(r))}, {"den", big_string(denominator(r))}, {"float", to_double(r)}};
}

inline json complex_json(const qudit::Amplitude& z) { return json::array({z.real(), z.imag()}); }

inline std::string trit_string(std::span<const Trit> trits) {
  std::string out;
  for (const Trit t : trits) out += static_cast<char>('0' + t);
  return out;
}

inline json run_json(const protocol::ProtocolRun& run) {
  return json{{"k", run.input.k()},
              {"y", trit_string(run.input.y())},
              {"x", trit_string(run.input.x())},
              {"outcomes", trit_string(run.outcomes)},
              {"transmissions", trit_string(run.transmissions)},
              {"decoded", run.decoded},
              {"expected", run.expected},
              {"engine", protocol::to_string(run.engine)},
              {"seed", run.seed}};
}

namespace detail {

inline void check_dense_k(unsigned k) {
  try {
    protocol::RegisterInput::validate_party_count(k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (k > kDenseLimit) throw UsageError("the dense engine supports k <= " + std::to_string(kDenseLimit));
}

inline json check_json(const std::string& name, bool passed, double deviation) {
  return json{{"name", name}, {"passed", passed}, {"deviation", deviation}};
}

}  // namespace detail

// ---------------------------------------------------------------- quantum

/// Root-branch search, U^3 = P, tensor-cube map, qubit swap and the dense
/// class sweep at each k. `tamper` perturbs the qutrit gate by diag(1, 1, e^{0.1i})
/// so that the checks fail; it exists to exercise the failure path.
inline Report quantum_verify(const std::vector<unsigned>& ks, double tolerance, bool tamper = false) {
  for (const unsigned k : ks) detail::check_dense_k(k);
  if (!(tolerance > 0)) throw UsageError("tolerance must be positive");
  Report report;
  report.command = "quantum-verify";
  report.config = {{"k", ks}, {"tolerance", tolerance}, {"tamper", tamper}};

  json checks = json::array();
  qudit::RootBranch branch{};
  try {
    const auto search = qudit::find_valid_root_branch(tolerance);
    branch = search.branch;
    auto entry = detail::check_json("root_branch_search", true, search.deviation);
    entry["branch"] = {search.branch.r1, search.branch.r2};
    entry["phase"] = complex_json(search.phase);
    entry["candidate_deviations"] = search.candidate_deviations;
    checks.push_back(std::move(entry));
  } catch (const std::runtime_error&) {
    checks.push_back(detail::check_json("root_branch_search", false, 1.0));
  }

  qudit::LocalGate gate = qudit::root_gate(3, branch);
  if (tamper) {
    using namespace std::complex_literals;
    gate = gate * qudit::LocalGate(3, {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, std::exp(0.1i)});
  }

  const double cube = gate.power(3).max_deviation(qudit::permutation_gate(3));
  checks.push_back(detail::check_json("cube_equals_shift", cube <= tolerance, cube));

  const auto tensor = qudit::check_tensor_cube(gate);
  auto tensor_entry = detail::check_json("tensor_cube", tensor.passes(tolerance), tensor.max_deviation);
  tensor_entry["phases"] = json::array();
  for (const auto& p : tensor.phases) tensor_entry["phases"].push_back(complex_json(p));
  checks.push_back(std::move(tensor_entry));

  const auto swap = qudit::check_qubit_swap(qudit::root_gate(2));
  auto swap_entry = detail::check_json("qubit_swap", swap.deviation <= tolerance, swap.deviation);
  swap_entry["phase"] = complex_json(swap.phase);
  checks.push_back(std::move(swap_entry));

  const protocol::DenseProtocol engine(gate);
  for (const unsigned k : ks) {
    const auto sweep = protocol::sweep_sum_classes(engine, k, tolerance);
    bool all = true;
    double worst = 0.0;
    for (const auto& entry : sweep) {
      all = all && entry.passes();
      worst = std::max(worst, entry.match ? entry.match->deviation : 1.0);
    }
    auto entry = detail::check_json("class_sweep_k" + std::to_string(k), all, worst);
    entry["patterns"] = sweep.size();
    checks.push_back(std::move(entry));
  }

  for (const auto& c : checks) report.passed = report.passed && c["passed"].get<bool>();
  report.payload = {{"checks", std::move(checks)}};
  return report;
}

inline Report quantum_run(unsigned k, std::uint64_t trials, protocol::Engine engine, std::uint64_t seed,
                          bool include_runs = false) {
  try {
    protocol::RegisterInput::validate_party_count(k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (engine == protocol::Engine::kDense && k > kDenseLimit) {
    throw UsageError("the dense engine supports k <= " + std::to_string(kDenseLimit) + "; use --engine analytic");
  }
  if (trials == 0) throw UsageError("trials must be positive");

  Report report;
  report.command = "quantum-run";
  report.config = {{"k", k},
                   {"trials", trials},
                   {"engine", protocol::to_string(engine)},
                   {"seed", seed},
                   {"seed_scheme", kSeedScheme}};

  std::optional<protocol::DenseProtocol> dense;
  std::optional<protocol::LemmaCertificate> certificate;
  if (engine == protocol::Engine::kDense) {
    dense.emplace();
  } else {
    try {
      certificate.emplace(protocol::certify_lemma());
    } catch (const std::runtime_error& e) {
      report.passed = false;
      report.payload = {{"error", e.what()}};
      return report;
    }
  }

  std::uint64_t successes = 0;
  json runs = json::array();
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    SeededSource rng(trial_seed);
    const auto input = protocol::sample_admissible(k, rng);
    auto run = dense ? dense->run(input, rng) : protocol::run_analytic(input, rng, *certificate);
    run.seed = trial_seed;
    successes += run.correct() ? 1 : 0;
    if (include_runs) runs.push_back(run_json(run));
  }

  report.passed = successes == trials;
  report.payload = {{"successes", successes},
                    {"trials", trials},
                    {"success_rate", rational_json(Rational(successes, trials))}};
  if (include_runs) report.payload["runs"] = std::move(runs);
  return report;
}

// -------------------------------------------------------------- classical

/// Parses "SSSSSS*n" items separated by commas; a bare item counts once.
inline classical::StrategyProfile parse_profile(const std::string& text) {
  std::vector<classical::Strategy> strategies;
  std::stringstream stream(text);
  std::string item;
  try {
    while (std::getline(stream, item, ',')) {
      unsigned count = 1;
      const auto star = item.find('*');
      if (star != std::string::npos) {
        const std::string digits = item.substr(star + 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6) {
          throw std::invalid_argument("bad repeat count in '" + item + "'");
        }
        count = static_cast<unsigned>(std::stoul(digits));
        item.resize(star);
      }
      const auto s = classical::Strategy::parse(item);
      strategies.insert(strategies.end(), count, s);
    }
    return classical::StrategyProfile(std::move(strategies));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline json groups_json(const std::vector<classical::StrategyProfile::Group>& groups) {
  json out = json::array();
  for (const auto& g : groups) out.push_back({{"strategy", g.strategy.to_string()}, {"size", g.size}});
  return out;
}

inline Report classical_example() {
  static constexpr unsigned kReferenceTotal = 341;
  static const Rational kReferenceSuccess(210, 341);
  const auto example = classical::reproduce_worked_example();
  Report report;
  report.command = "classical-example";
  report.config = {{"k", example.k}, {"strategy", example.strategy.to_string()}};
  json rows = json::array();
  for (const auto& row : example.rows) {
    rows.push_back({{"zero_bits", row.zero_bits},
                    {"one_bits", row.one_bits},
                    {"cases", big_string(row.cases)},
                    {"g_value", row.g_value},
                    {"reference_label", row.reference_label}});
  }
  json by_g = json::array();
  for (const auto& c : example.cases_by_g) by_g.push_back(big_string(c));
  report.payload = {{"transcript", example.transcript},
                    {"rows", std::move(rows)},
                    {"total", big_string(example.total)},
                    {"cases_by_g", std::move(by_g)},
                    {"guess", example.guess},
                    {"majority", big_string(example.majority)},
                    {"success", rational_json(example.success)},
                    {"label_note", example.label_note}};
  report.passed = example.total == kReferenceTotal && example.success == kReferenceSuccess;
  return report;
}

/// Collapsed evaluation always; the exhaustive walk too when k is in its reach.
/// Fails if both ran and disagree.
inline Report classical_eval(const std::string& profile_text, bool long_run = false) {
  const auto profile = parse_profile(profile_text);
  Report report;
  report.command = "classical-eval";
  report.config = {{"profile", profile_text}, {"k", profile.k()}, {"long_run", long_run}};
  const Rational collapsed = classical::evaluate_collapsed(profile);
  report.payload = {{"groups", groups_json(profile.groups())}, {"collapsed", rational_json(collapsed)}};
  const unsigned limit = long_run ? classical::kLongRunLimit : classical::kExhaustiveLimit;
  if (profile.k() <= limit) {
    const Rational exhaustive = classical::evaluate_exhaustive(profile, long_run);
    report.payload["exhaustive"] = rational_json(exhaustive);
    report.payload["agree"] = exhaustive == collapsed;
    report.passed = exhaustive == collapsed;
  } else {
    report.payload["exhaustive"] = nullptr;
  }
  return report;
}

/// Best homogeneous strategy, then optionally a seeded heterogeneous search
/// started from it.
inline Report classical_search(unsigned k, std::uint64_t seed, unsigned rounds) {
  try {
    protocol::RegisterInput::validate_party_count(k);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Report report;
  report.command = "classical-search";
  report.config = {{"k", k}, {"seed", seed}, {"heterogeneous_rounds", rounds}};
  const auto best = classical::best_homogeneous(k);
  report.payload = {{"homogeneous",
                     {{"strategy", best.strategy.to_string()},
                      {"division_type", classical::division_type(best.strategy).to_string()},
                      {"probability", rational_json(best.probability)}}}};
  if (rounds > 0) {
    const auto search = classical::search_profiles(k, seed, rounds);
    report.payload["heterogeneous"] = {{"groups", groups_json(search.groups)},
                                       {"probability", rational_json(search.probability)},
                                       {"evaluations", search.evaluations},
                                       {"improvements", search.improvements}};
    report.passed = search.probability >= best.probability;
  }
  return report;
}

// ----------------------------------------------------------------- bounds

inline std::vector<std::string> bounds_csv_header() {
  return {"family", "j", "i", "m", "a", "im_rule", "value_num", "value_den", "value_float", "gap_float"};
}

inline Report bounds_table(bounds::Family family, const std::vector<std::int64_t>& js,
                     const bounds::ImRule& rule = bounds::ImRule::worst_case()) {
  for (const auto j : js)
    if (j < 1) throw UsageError("j must be >= 1");
  Report report;
  report.command = "bounds";
  const bool uses_rule = family == bounds::Family::kF || family == bounds::Family::kL;
  report.config = {{"family", bounds::to_string(family)}, {"j", js}, {"im_rule", uses_rule ? rule.name() : ""}};
  json rows = json::array();
  const auto optional_json = [](const std::optional<unsigned>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& row : bounds::convergence_table(family, js, rule)) {
    rows.push_back({{"family", bounds::to_string(row.family)},
                    {"j", row.j},
                    {"i", optional_json(row.i)},
                    {"m", optional_json(row.m)},
                    {"a", optional_json(row.a)},
                    {"im_rule", row.im_rule},
                    {"headline", row.headline},
                    {"value", rational_json(row.value)},
                    {"gap_float", row.gap_float()}});
  }
  report.payload = {{"rows", std::move(rows)}};
  return report;
}

// ------------------------------------------------------------- gap report

/// Quantum success rate (analytic engine) beside the best homogeneous
/// classical probability and the 1/3 baseline, per k.
inline Report gap_report(const std::vector<unsigned>& ks, std::uint64_t trials, std::uint64_t seed) {
  for (const unsigned k : ks) {
    try {
      protocol::RegisterInput::validate_party_count(k);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (trials == 0) throw UsageError("trials must be positive");
  Report report;
  report.command = "gap-report";
  report.config = {{"k", ks}, {"trials", trials}, {"seed", seed}, {"seed_scheme", kSeedScheme}};

  json rows = json::array();
  bool quantum_perfect = true;
  bool classical_non_increasing = true;
  std::optional<std::pair<unsigned, Rational>> previous;
  for (const unsigned k : ks) {
    const Report run = quantum_run(k, trials, protocol::Engine::kAnalytic, seed);
    const auto best = classical::best_homogeneous(k);
    quantum_perfect = quantum_perfect && run.passed;
    if (previous && previous->first < k && best.probability > previous->second) classical_non_increasing = false;
    previous.emplace(k, best.probability);
    rows.push_back({{"k", k},
                    {"quantum", run.payload.at("success_rate")},
                    {"classical", rational_json(best.probability)},
                    {"classical_strategy", best.strategy.to_string()},
                    {"baseline", rational_json(Rational(1, 3))}});
  }
  report.passed = quantum_perfect && classical_non_increasing;
  report.payload = {{"rows", std::move(rows)},
                    {"quantum_perfect", quantum_perfect},
                    {"classical_non_increasing", classical_non_increasing}};
  return report;
}

// -------------------------------------------------------------------- csv

inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

/// CSV rendering of a bounds or gap-report table.
inline std::string to_csv(const Report& report) {
  std::ostringstream out;
  const auto& rows = report.payload.at("rows");
  if (report.command == "bounds") {
    const auto header = bounds_csv_header();
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (const auto& row : rows) {
      out << csv_cell(row["family"]) << ',' << csv_cell(row["j"]) << ',' << csv_cell(row["i"]) << ','
          << csv_cell(row["m"]) << ',' << csv_cell(row["a"]) << ',' << csv_cell(row["im_rule"]) << ','
          << csv_cell(row["value"]["num"]) << ',' << csv_cell(row["value"]["den"]) << ','
          << csv_cell(row["value"]["float"]) << ',' << csv_cell(row["gap_float"]) << '\n';
    }
  } else if (report.command == "gap-report") {
    out << "k,quantum_num,quantum_den,quantum_float,classical_num,classical_den,classical_float,baseline_float\n";
    for (const auto& row : rows) {
      out << csv_cell(row["k"]);
      for (const char* key : {"quantum", "classical"}) {
        out << ',' << csv_cell(row[key]["num"]) << ',' << csv_cell(row[key]["den"]) << ','
            << csv_cell(row[key]["float"]);
      }
      out << ',' << csv_cell(row["baseline"]["float"]) << '\n';
    }
  } else {
    throw UsageError("--format csv is available for bounds and gap-report only");
  }
  return out.str();
}

}  // namespace tritccp::report
