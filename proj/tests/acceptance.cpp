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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <tuple>
#include <vector>

#include "tritccp/report.hpp"

using namespace tritccp;

namespace {

// Pinned tolerances.
constexpr double kLemmaTolerance = 1e-10;
constexpr double kRamusRelativeError = 1e-9;
constexpr double kClassicalGapAt61 = 0.1;
constexpr double kBoundATolerance = 1e-3;
constexpr double kBoundNTolerance = 1e-6;
constexpr double kBoundFLTolerance = 1e-2;

// Regression constants for the best homogeneous probability.
const Rational kBestHomogeneous4(4, 5);
const Rational kBestHomogeneous13(1716, 2731);
const Rational kBestHomogeneous31(303906051, 715827883);
const Rational kBestHomogeneous61(BigCount("267037541015397434"), BigCount("768614336404564651"));

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void criterion(int number, const char* name, const std::function<Outcome()>& check) {
  Outcome outcome{false, ""};
  try {
    outcome = check();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  if (!outcome.passed) ++failures;
  std::printf("%s criterion %d (%s): %s\n", outcome.passed ? "PASS" : "FAIL", number, name, outcome.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

Outcome root_gate_lemma() {
  const auto search = qudit::find_valid_root_branch(kLemmaTolerance);
  const auto gate = qudit::root_gate(3, search.branch);
  const double cube = gate.power(3).max_deviation(qudit::permutation_gate(3));
  const auto tensor = qudit::check_tensor_cube(gate);
  double modulus = 0.0;
  for (const auto& c : tensor.phases) modulus = std::max(modulus, std::abs(std::abs(c) - 1.0));
  const bool ok = cube <= kLemmaTolerance && tensor.passes(kLemmaTolerance) && modulus <= kLemmaTolerance;
  return {ok, fmt("branch (%u,%u); |U^3 - P| = %.2e; tensor-cube deviation %.2e; ||c| - 1| = %.2e; tol %.0e",
                  search.branch.r1, search.branch.r2, cube, tensor.max_deviation, modulus, kLemmaTolerance)};
}

Outcome qubit_swap() {
  const auto match = qudit::check_qubit_swap(qudit::root_gate(2));
  const double modulus = std::abs(std::abs(match.phase) - 1.0);
  return {match.deviation <= kLemmaTolerance && modulus <= kLemmaTolerance,
          fmt("deviation %.2e; phase (%.6f, %.6f); tol %.0e", match.deviation, match.phase.real(), match.phase.imag(),
              kLemmaTolerance)};
}

Outcome quantum_success() {
  protocol::DenseProtocol engine;
  std::string detail;
  bool ok = true;
  for (const unsigned k : {4u, 7u}) {
    SeededSource rng(derive_seed(2026, k));
    std::uint64_t runs = 0, correct = 0;
    protocol::for_each_admissible(k, [&](const protocol::RegisterInput& input) {
      ++runs;
      correct += engine.run(input, rng).correct() ? 1 : 0;
    });
    ok = ok && BigCount(runs) == protocol::admissible_count(k) && correct == runs;
    detail += fmt("k=%u dense exhaustive %llu/%llu; ", k, static_cast<unsigned long long>(correct),
                  static_cast<unsigned long long>(runs));
  }
  const auto dense = report::quantum_run(10, 1000, protocol::Engine::kDense, 2026);
  const auto analytic = report::quantum_run(100, 100000, protocol::Engine::kAnalytic, 2026);
  ok = ok && dense.passed && analytic.passed;
  detail += fmt("k=10 dense %llu/1000; k=100 analytic %llu/100000",
                dense.payload["successes"].get<unsigned long long>(),
                analytic.payload["successes"].get<unsigned long long>());
  return {ok, detail};
}

Outcome worked_example() {
  const auto example = classical::reproduce_worked_example();
  std::vector<BigCount> counts;
  std::string listed;
  for (const auto& row : example.rows) {
    counts.push_back(row.cases);
    listed += (listed.empty() ? "" : ",") + row.cases.str();
  }
  const bool ok = counts == std::vector<BigCount>{10, 210, 120, 1} && example.total == 341 &&
                  example.success == Rational(210, 341);
  return {ok, "per-m counts (" + listed + "), total " + example.total.str() + ", success " + example.success.str()};
}

Outcome evaluator_equivalence() {
  unsigned compared = 0, agreed = 0;
  for (const auto& family : classical::detail::division_families()) {
    unsigned assignments = 1;
    for (unsigned i = 0; i < family.slot_count; ++i) assignments *= 3;
    for (unsigned code = 0; code < assignments; ++code) {
      std::vector<Trit> slots(family.slot_count);
      for (unsigned i = 0, rest = code; i < family.slot_count; ++i, rest /= 3) slots[i] = static_cast<Trit>(rest % 3);
      std::optional<classical::Strategy> s;
      try {
        s = classical::canonical_division(family.name, slots);
      } catch (const std::invalid_argument&) {
        continue;  // colliding slot values
      }
      for (const unsigned k : {4u, 7u}) {
        const auto profile = classical::StrategyProfile::homogeneous(*s, k);
        ++compared;
        agreed += classical::evaluate_exhaustive(profile) == classical::evaluate_collapsed(profile) ? 1 : 0;
      }
    }
  }
  SeededSource rng(7);
  const auto random_strategy = [&] {
    std::array<Trit, classical::kRegisterValues> table{};
    for (auto& t : table) t = static_cast<Trit>(rng.below(3));
    return classical::Strategy(table);
  };
  unsigned hetero = 0;
  while (hetero < 10) {
    const auto a = random_strategy();
    const auto b = random_strategy();
    if (a == b) continue;
    const auto split = static_cast<unsigned>(1 + rng.below(3));
    std::vector<classical::Strategy> parties(split, a);
    parties.insert(parties.end(), 4 - split, b);
    const classical::StrategyProfile profile(parties);
    ++hetero;
    ++compared;
    agreed += classical::evaluate_exhaustive(profile) == classical::evaluate_collapsed(profile) ? 1 : 0;
  }
  return {agreed == compared, fmt("%u/%u profiles agree exactly (homogeneous divisions at k=4,7 plus 10 two-group k=4)",
                                  agreed, compared)};
}

Outcome classical_collapse() {
  const std::vector<std::pair<unsigned, Rational>> pinned{
      {4, kBestHomogeneous4}, {13, kBestHomogeneous13}, {31, kBestHomogeneous31}, {61, kBestHomogeneous61}};
  bool ok = true;
  std::string detail;
  std::optional<Rational> previous;
  for (const auto& [k, expected] : pinned) {
    const auto best = classical::best_homogeneous(k);
    ok = ok && best.probability == expected;
    if (previous && best.probability > *previous) ok = false;
    previous = best.probability;
    detail += fmt("k=%u %s %.6f; ", k, best.strategy.to_string().c_str(), to_double(best.probability));
  }
  const double gap = to_double(*previous - Rational(1, 3));
  ok = ok && gap < kClassicalGapAt61;
  return {ok, detail + fmt("non-increasing, k=61 gap %.4f < %.1f", gap, kClassicalGapAt61)};
}

Outcome ramus_identity() {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  double worst = 0.0;
  unsigned cases = 0, rounded = 0, rounded_in_double = 0;
  for (std::int64_t n = 0; n <= 60; ++n) {
    for (std::int64_t p = 2; p <= 9; ++p) {
      for (std::int64_t q = 0; q < p; ++q) {
        const GroupedSumSpec spec{n, q, p};
        const BigCount exact = grouped_sum(spec);
        const double closed = ramus(spec);
        const double exact_d = exact.convert_to<double>();
        worst = std::max(worst, std::abs(closed - exact_d) / std::max(1.0, exact_d));
        ++cases;
        rounded += BigCount(boost::multiprecision::round(ramus_as<Wide>(spec))) == exact ? 1 : 0;
        rounded_in_double += exact_d == std::round(closed) && BigCount(exact_d) == exact ? 1 : 0;
      }
    }
  }
  return {rounded == cases && worst <= kRamusRelativeError,
          fmt("relative error (double) max %.2e <= %.0e; rounding exact in 50-digit evaluation %u/%u "
              "(double alone: %u/%u, integers above 2^53 are not representable)",
              worst, kRamusRelativeError, rounded, cases, rounded_in_double, cases)};
}

Outcome bound_convergence() {
  const Rational third(1, 3);
  const auto gap = [&](const Rational& v) { return std::abs(to_double(v - third)); };
  double a_gap = 0.0, f_gap = 0.0, l_gap = 0.0;
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned m = 0; m <= 6; m += 3) a_gap = std::max(a_gap, gap(bounds::bound_a(60, i, m)));
  for (unsigned a = 0; a < 3; ++a) {
    f_gap = std::max(f_gap, gap(bounds::bound_f(60, a)));
    l_gap = std::max(l_gap, gap(bounds::bound_l(60, a)));
  }
  const bool n_exact = bounds::bound_n(60, 1) == third && bounds::bound_n(60, 2) == third;
  const double n0_gap = gap(bounds::bound_n(60, 0));
  const bool ok = a_gap < kBoundATolerance && n_exact && n0_gap < kBoundNTolerance && f_gap < kBoundFLTolerance &&
                  l_gap < kBoundFLTolerance;
  return {ok, fmt("j=60: max|A-1/3| %.2e; N^1,N^2 exactly 1/3: %s; |N^0-1/3| %.2e; max|F-1/3| %.2e; "
                  "max|L-1/3| %.2e",
                  a_gap, n_exact ? "yes" : "no", n0_gap, f_gap, l_gap)};
}

Outcome determinism() {
  const std::vector<std::function<report::Report()>> commands{
      [] { return report::quantum_run(7, 500, protocol::Engine::kDense, 11, true); },
      [] { return report::quantum_run(100, 500, protocol::Engine::kAnalytic, 11, true); },
      [] { return report::classical_example(); },
      [] { return report::classical_eval("001122*3,012012"); },
      [] { return report::classical_search(13, 11, 20); },
  };
  unsigned identical = 0;
  for (const auto& command : commands) {
    const auto first = report::sha256_hex(report::hashed_region(command()));
    const auto second = report::sha256_hex(report::hashed_region(command()));
    identical += first == second ? 1 : 0;
  }
  return {identical == commands.size(),
          fmt("%u/%zu commands produced identical payload digests on two runs", identical, commands.size())};
}

}  // namespace

int main(int argc, char** argv) {
  // With an argument, only that criterion runs.
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  const std::vector<std::tuple<int, const char*, Outcome (*)()>> criteria{
      {1, "root-gate lemma", root_gate_lemma},
      {2, "qubit analog", qubit_swap},
      {3, "quantum perfect success", quantum_success},
      {4, "k=10 worked example", worked_example},
      {5, "evaluator equivalence", evaluator_equivalence},
      {6, "classical collapse toward 1/3", classical_collapse},
      {7, "Ramus identity", ramus_identity},
      {8, "bound convergence", bound_convergence},
      {9, "determinism", determinism},
  };
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "usage: acceptance [criterion 1-%zu]\n", criteria.size());
    return 2;
  }
  for (const auto& [number, name, check] : criteria)
    if (only == 0 || only == number) criterion(number, name, check);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
