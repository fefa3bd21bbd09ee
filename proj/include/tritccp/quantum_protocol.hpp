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
 * The entanglement-assisted one-trit protocol.
 *
 * k = 3n + 1 parties each hold a trit Y^i and a bit X^i, with the number m
 * of zero bits a multiple of 3. They share the qutrit state [0]^k, apply the
 * cube root of the cyclic shift wherever X^i = 0, measure, and each transmit
 * the single trit Y^i + x^i. The referee sums the transcript mod 3, which is
 * G(Y, X) = sum Y^i + (m/3 mod 3).
 *
 * Two engines run the protocol: a dense state-vector engine, and an analytic
 * engine that samples directly from the class state the dense engine
 * produces. The analytic engine only runs with a LemmaCertificate, which is
 * obtained by verifying the class-advance property on dense states.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tritccp/combinatorics.hpp"
#include "tritccp/qudit_sim.hpp"
#include "tritccp/random.hpp"

namespace tritccp::protocol {

/// Admissible distributed input: k = 1 mod 3 (k >= 4), trits Y, bits X, zero-count of X = 0 mod 3.
class RegisterInput {
 public:
  RegisterInput(std::vector<Trit> y, std::vector<Trit> x) : y_(std::move(y)), x_(std::move(x)) {
    validate_party_count(y_.size());
    if (x_.size() != y_.size()) throw std::invalid_argument("Y and X must have the same length");
    for (const auto v : y_)
      if (v > 2) throw std::invalid_argument("Y entries must be trits");
    for (const auto v : x_)
      if (v > 1) throw std::invalid_argument("X entries must be bits");
    if (zero_count() % 3 != 0) {
      throw std::invalid_argument("inadmissible X: zero count " + std::to_string(zero_count()) +
                                  " is not a multiple of 3");
    }
  }

  static void validate_party_count(std::size_t k) {
    if (k < 4 || k % 3 != 1) {
      throw std::invalid_argument("party count must be 1 mod 3 and at least 4, got " + std::to_string(k));
    }
  }

  unsigned k() const { return static_cast<unsigned>(y_.size()); }
  std::span<const Trit> y() const { return y_; }
  std::span<const Trit> x() const { return x_; }
  unsigned zero_count() const {
    unsigned m = 0;
    for (const auto b : x_) m += (b == 0);
    return m;
  }

  friend bool operator==(const RegisterInput&, const RegisterInput&) = default;

 private:
  std::vector<Trit> y_;
  std::vector<Trit> x_;
};

/// l(X) = (m / 3) mod 3 with m the number of zero bits. Throws if m is not a multiple of 3.
inline Trit l_of_x(std::span<const Trit> x) {
  unsigned m = 0;
  for (const auto b : x) {
    if (b > 1) throw std::invalid_argument("X entries must be bits");
    m += (b == 0);
  }
  if (m % 3 != 0) throw std::invalid_argument("inadmissible X: zero count not a multiple of 3");
  return static_cast<Trit>((m / 3) % 3);
}

/// G(Y, X) = (sum Y^i + l(X)) mod 3.
inline Trit global_function(const RegisterInput& input) {
  return static_cast<Trit>((trit_add(input.y()) + l_of_x(input.x())) % 3);
}

inline Trit decode(std::span<const Trit> transmissions) { return trit_add(transmissions); }

/// Number of admissible inputs for k parties: (sum over m = 0 mod 3 of C(k, m)) * 3^k.
inline BigCount admissible_count(unsigned k) {
  return grouped_sum({static_cast<std::int64_t>(k), 0, 3}) * pow_big(3, k);
}

/// Calls visit(const RegisterInput&) once per admissible input, X-major.
template <class Visitor>
void for_each_admissible(unsigned k, Visitor&& visit) {
  RegisterInput::validate_party_count(k);
  if (k > 16) throw std::length_error("exhaustive enumeration is limited to k <= 16");
  std::vector<Trit> x(k), y(k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    unsigned zeros = 0;
    for (unsigned i = 0; i < k; ++i) {
      x[i] = static_cast<Trit>((mask >> (k - 1 - i)) & 1u);
      zeros += (x[i] == 0);
    }
    if (zeros % 3 != 0) continue;
    std::fill(y.begin(), y.end(), Trit{0});
    for (;;) {
      visit(RegisterInput(y, x));
      unsigned pos = k;
      while (pos > 0 && y[pos - 1] == 2) y[--pos] = 0;
      if (pos == 0) break;
      ++y[pos - 1];
    }
  }
}

/// Uniform draw from the admissible inputs. X is drawn uniformly from all
/// bit strings and redrawn until its zero count is a multiple of 3, which is
/// exactly the C(k, m)-weighted choice of m followed by a uniform placement.
inline RegisterInput sample_admissible(unsigned k, SeededSource& rng) {
  RegisterInput::validate_party_count(k);
  std::vector<Trit> x(k), y(k);
  for (;;) {
    unsigned zeros = 0;
    for (auto& b : x) {
      b = static_cast<Trit>(rng.below(2));
      zeros += (b == 0);
    }
    if (zeros % 3 == 0) break;
  }
  for (auto& t : y) t = static_cast<Trit>(rng.below(3));
  return RegisterInput(std::move(y), std::move(x));
}

enum class Engine { kDense, kAnalytic };

inline std::string to_string(Engine engine) { return engine == Engine::kDense ? "dense" : "analytic"; }

inline Engine parse_engine(const std::string& name) {
  if (name == "dense") return Engine::kDense;
  if (name == "analytic") return Engine::kAnalytic;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

/// One execution: measurement outcomes x^i, transmissions Y^i + x^i, and the referee's decode.
struct ProtocolRun {
  RegisterInput input;
  std::vector<Trit> outcomes;
  std::vector<Trit> transmissions;
  Trit decoded = 0;
  Trit expected = 0;
  Engine engine = Engine::kDense;
  std::uint64_t seed = 0;

  bool correct() const { return decoded == expected; }
};

namespace detail {

inline ProtocolRun finish_run(const RegisterInput& input, std::vector<Trit> outcomes, Engine engine) {
  std::vector<Trit> transmissions(input.k());
  for (unsigned i = 0; i < input.k(); ++i) transmissions[i] = static_cast<Trit>((input.y()[i] + outcomes[i]) % 3);
  const Trit decoded = decode(transmissions);
  return ProtocolRun{input, std::move(outcomes), std::move(transmissions), decoded, global_function(input), engine, 0};
}

}  // namespace detail

/// Dense state-vector engine. Evolved states depend only on X and are
/// memoized per X pattern; an instance is not safe for concurrent use.
class DenseProtocol {
 public:
  /// Uses the first branch accepted by find_valid_root_branch.
  DenseProtocol() : DenseProtocol(qudit::root_gate(3, qudit::find_valid_root_branch().branch)) {}
  explicit DenseProtocol(qudit::LocalGate gate) : gate_(std::move(gate)) {
    if (gate_.dim() != 3) throw std::invalid_argument("the protocol needs a qutrit gate");
  }

  const qudit::LocalGate& gate() const { return gate_; }

  /// [0]^k with the gate applied at every party whose bit is 0.
  qudit::QuditState evolve(std::span<const Trit> x) const {
    qudit::QuditState state = qudit::make_sum_class_state(static_cast<unsigned>(x.size()), 0, 3);
    for (unsigned i = 0; i < x.size(); ++i) {
      if (x[i] == 0) state = qudit::apply_local(state, gate_, i + 1);
    }
    return state;
  }

  ProtocolRun run(const RegisterInput& input, SeededSource& rng) {
    std::vector<Trit> key(input.x().begin(), input.x().end());
    auto it = samplers_.find(key);
    if (it == samplers_.end()) {
      qudit::MeasurementSampler sampler(evolve(input.x()));
      if (cached_entries_ + sampler.size() > kCacheEntries) {
        samplers_.clear();
        cached_entries_ = 0;
      }
      cached_entries_ += sampler.size();
      it = samplers_.emplace(std::move(key), std::move(sampler)).first;
    }
    const std::string digits = it->second.sample(rng);
    std::vector<Trit> outcomes(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) outcomes[i] = static_cast<Trit>(digits[i] - '0');
    return detail::finish_run(input, std::move(outcomes), Engine::kDense);
  }

 private:
  static constexpr std::size_t kCacheEntries = std::size_t{1} << 23;

  qudit::LocalGate gate_;
  std::map<std::vector<Trit>, qudit::MeasurementSampler> samplers_;
  std::size_t cached_entries_ = 0;
};

inline ProtocolRun run_dense(const RegisterInput& input, SeededSource& rng) {
  DenseProtocol engine;
  return engine.run(input, rng);
}

/// Per-X outcome of the dense class sweep.
struct ClassSweepEntry {
  std::vector<Trit> x;
  Trit expected_class = 0;
  std::optional<qudit::SumClassMatch> match;
  bool passes() const { return match && match->sum_class == expected_class; }
};

/// Evolves [0]^k for every admissible X and classifies the result.
inline std::vector<ClassSweepEntry> sweep_sum_classes(const DenseProtocol& engine, unsigned k, double tol) {
  RegisterInput::validate_party_count(k);
  std::vector<ClassSweepEntry> entries;
  std::vector<Trit> x(k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    unsigned zeros = 0;
    for (unsigned i = 0; i < k; ++i) {
      x[i] = static_cast<Trit>((mask >> (k - 1 - i)) & 1u);
      zeros += (x[i] == 0);
    }
    if (zeros % 3 != 0) continue;
    entries.push_back({x, l_of_x(x), qudit::classify_sum_class(engine.evolve(x), tol)});
  }
  return entries;
}

/// Proof that the class-advance property was checked in this process:
/// a valid root branch exists and every admissible X at the sweep sizes
/// maps [0]^k to phase * [l(X)]^k.
class LemmaCertificate {
 public:
  const qudit::BranchSearchResult& branch() const { return branch_; }
  double max_deviation() const { return max_deviation_; }
  const std::vector<unsigned>& swept_party_counts() const { return swept_; }

 private:
  LemmaCertificate() = default;
  friend LemmaCertificate certify_lemma(std::vector<unsigned> party_counts, double tol);

  qudit::BranchSearchResult branch_{};
  double max_deviation_ = 0.0;
  std::vector<unsigned> swept_;
};

/// Runs the branch search and the dense class sweep; throws std::runtime_error on any failure.
inline LemmaCertificate certify_lemma(std::vector<unsigned> party_counts = {4, 7},
                                      double tol = qudit::kUnitTolerance) {
  LemmaCertificate cert;
  cert.branch_ = qudit::find_valid_root_branch(tol);
  cert.max_deviation_ = cert.branch_.deviation;
  const DenseProtocol engine(qudit::root_gate(3, cert.branch_.branch));
  for (const unsigned k : party_counts) {
    for (const auto& entry : sweep_sum_classes(engine, k, tol)) {
      if (!entry.passes()) throw std::runtime_error("class sweep failed at k=" + std::to_string(k));
      cert.max_deviation_ = std::max(cert.max_deviation_, entry.match->deviation);
    }
  }
  cert.swept_ = std::move(party_counts);
  return cert;
}

/// Samples the measurement outcome uniformly from the digit-sum-l(X) class:
/// k-1 uniform digits, the last one forced. No state vector is built.
inline ProtocolRun run_analytic(const RegisterInput& input, SeededSource& rng, const LemmaCertificate& /*proof*/) {
  const Trit l = l_of_x(input.x());
  std::vector<Trit> outcomes(input.k());
  unsigned partial = 0;
  for (unsigned i = 0; i + 1 < input.k(); ++i) {
    outcomes[i] = static_cast<Trit>(rng.below(3));
    partial += outcomes[i];
  }
  outcomes.back() = static_cast<Trit>((l + 3 - partial % 3) % 3);
  return detail::finish_run(input, std::move(outcomes), Engine::kAnalytic);
}

}  // namespace tritccp::protocol
