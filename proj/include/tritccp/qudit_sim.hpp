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
 * Dense state-vector simulation of k qudits of dimension 2 or 3.
 *
 * Basis strings are indexed base-d with party 1 as the most significant
 * digit, so amplitude index 5 of a 3-qutrit state is the string "012".
 * Besides the generic pieces (states, local gates, measurement) this header
 * builds the digit-sum class states and the cube root of the cyclic shift,
 * and checks that the cube root advances every 3-party sum class by one.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tritccp/random.hpp"

namespace tritccp::qudit {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 24;
inline constexpr double kUnitTolerance = 1e-10;

namespace detail {

inline void check_dimension(unsigned d) {
  if (d != 2 && d != 3) throw std::invalid_argument("qudit dimension must be 2 or 3, got " + std::to_string(d));
}

inline std::size_t checked_size(unsigned d, unsigned k) {
  check_dimension(d);
  if (k < 1) throw std::invalid_argument("qudit state needs at least one party");
  std::size_t size = 1;
  for (unsigned i = 0; i < k; ++i) {
    size *= d;
    if (size > kMaxAmplitudes) {
      throw std::length_error("state with d=" + std::to_string(d) + ", k=" + std::to_string(k) +
                              " exceeds the dense limit of 2^24 amplitudes");
    }
  }
  return size;
}

}  // namespace detail

/// Dense unit-norm state of k qudits.
class QuditState {
 public:
  QuditState(unsigned d, unsigned k, std::vector<Amplitude> amplitudes)
      : d_(d), k_(k), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != detail::checked_size(d, k)) {
      throw std::invalid_argument("amplitude count does not match d^k");
    }
    if (std::abs(norm_squared() - 1.0) > kUnitTolerance) {
      throw std::invalid_argument("state is not normalized");
    }
  }

  /// Computational basis state named by a digit string, party 1 first.
  static QuditState basis(unsigned d, std::string_view digits) {
    const auto k = static_cast<unsigned>(digits.size());
    std::vector<Amplitude> amps(detail::checked_size(d, k));
    amps[index_of(d, digits)] = 1.0;
    return QuditState(d, k, std::move(amps));
  }

  static std::size_t index_of(unsigned d, std::string_view digits) {
    std::size_t index = 0;
    for (const char c : digits) {
      const int digit = c - '0';
      if (digit < 0 || digit >= static_cast<int>(d)) {
        throw std::invalid_argument("digit out of range in basis string '" + std::string(digits) + "'");
      }
      index = index * d + static_cast<std::size_t>(digit);
    }
    return index;
  }

  static std::string digits_of(unsigned d, unsigned k, std::size_t index) {
    std::string digits(k, '0');
    for (unsigned pos = k; pos-- > 0;) {
      digits[pos] = static_cast<char>('0' + index % d);
      index /= d;
    }
    return digits;
  }

  unsigned dim() const { return d_; }
  unsigned parties() const { return k_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  Amplitude operator[](std::size_t index) const { return amplitudes_[index]; }
  Amplitude amplitude(std::string_view digits) const { return amplitudes_[index_of(d_, digits)]; }

  double norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
  }

 private:
  unsigned d_;
  unsigned k_;
  std::vector<Amplitude> amplitudes_;
};

/// Max-norm distance between two states of the same shape.
inline double max_deviation(const QuditState& a, const QuditState& b, Amplitude phase = 1.0) {
  if (a.dim() != b.dim() || a.parties() != b.parties()) throw std::invalid_argument("state shapes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

/// d x d unitary acting on a single party.
class LocalGate {
 public:
  /// Row-major entries. Throws if the matrix is not unitary within kUnitTolerance.
  LocalGate(unsigned d, std::vector<Amplitude> entries) : d_(d), entries_(std::move(entries)) {
    detail::check_dimension(d);
    if (entries_.size() != std::size_t{d} * d) throw std::invalid_argument("gate entry count must be d*d");
    if (unitarity_defect() > kUnitTolerance) throw std::invalid_argument("gate is not unitary");
  }

  static LocalGate identity(unsigned d) {
    detail::check_dimension(d);
    std::vector<Amplitude> e(std::size_t{d} * d);
    for (unsigned i = 0; i < d; ++i) e[i * d + i] = 1.0;
    return LocalGate(d, std::move(e));
  }

  unsigned dim() const { return d_; }
  Amplitude operator()(unsigned row, unsigned col) const { return entries_[row * d_ + col]; }
  std::span<const Amplitude> entries() const { return entries_; }

  LocalGate operator*(const LocalGate& rhs) const {
    if (rhs.d_ != d_) throw std::invalid_argument("gate dimensions differ");
    std::vector<Amplitude> out(entries_.size());
    for (unsigned r = 0; r < d_; ++r)
      for (unsigned c = 0; c < d_; ++c)
        for (unsigned t = 0; t < d_; ++t) out[r * d_ + c] += (*this)(r, t) * rhs(t, c);
    return LocalGate(d_, std::move(out));
  }

  LocalGate power(unsigned exponent) const {
    LocalGate result = identity(d_);
    for (unsigned i = 0; i < exponent; ++i) result = result * *this;
    return result;
  }

  /// max |M^dagger M - I| entrywise.
  double unitarity_defect() const {
    double worst = 0.0;
    for (unsigned r = 0; r < d_; ++r) {
      for (unsigned c = 0; c < d_; ++c) {
        Amplitude acc = 0.0;
        for (unsigned t = 0; t < d_; ++t) acc += std::conj((*this)(t, r)) * (*this)(t, c);
        worst = std::max(worst, std::abs(acc - (r == c ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

  double max_deviation(const LocalGate& other) const {
    if (other.d_ != d_) throw std::invalid_argument("gate dimensions differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) worst = std::max(worst, std::abs(entries_[i] - other.entries_[i]));
    return worst;
  }

 private:
  unsigned d_;
  std::vector<Amplitude> entries_;
};

/// Choice of cube roots for the eigenvalues a = e^{2 pi i/3} and a^2 of the cyclic shift:
/// a -> e^{2 pi i (1 + 3 r1)/9}, a^2 -> e^{2 pi i (2 + 3 r2)/9}. The eigenvalue 1 keeps root 1.
struct RootBranch {
  unsigned r1 = 0;
  unsigned r2 = 0;
  friend bool operator==(const RootBranch&, const RootBranch&) = default;
};

/// Uniform superposition over all k-digit strings whose digit sum is j mod d.
inline QuditState make_sum_class_state(unsigned k, unsigned j, unsigned d = 3) {
  const std::size_t size = detail::checked_size(d, k);
  if (j >= d) throw std::invalid_argument("sum class must be below the dimension");
  std::vector<Amplitude> amps(size);
  const double weight = 1.0 / std::sqrt(static_cast<double>(size / d));
  for (std::size_t index = 0; index < size; ++index) {
    unsigned digit_sum = 0;
    for (std::size_t rest = index; rest > 0; rest /= d) digit_sum += static_cast<unsigned>(rest % d);
    if (digit_sum % d == j) amps[index] = weight;
  }
  return QuditState(d, k, std::move(amps));
}

/// Cyclic shift |0> -> |1> -> ... -> |d-1> -> |0>. For d = 2 this is NOT.
inline LocalGate permutation_gate(unsigned d) {
  detail::check_dimension(d);
  std::vector<Amplitude> e(std::size_t{d} * d);
  for (unsigned col = 0; col < d; ++col) e[((col + 1) % d) * d + col] = 1.0;
  return LocalGate(d, std::move(e));
}

/// U with U^d equal to the cyclic shift.
///
/// d = 3: U = S^{-1} diag(1, w1, w2) S with S the Vandermonde matrix in
/// a = e^{2 pi i/3} (rows (1,1,1), (1,a,a^2), (1,a^2,a)) and (w1, w2) fixed by
/// the branch. d = 2: the matrix (1/2)[[1+i, 1-i], [1-i, 1+i]]; no branch.
inline LocalGate root_gate(unsigned d, std::optional<RootBranch> branch = std::nullopt) {
  detail::check_dimension(d);
  using namespace std::complex_literals;
  if (d == 2) {
    return LocalGate(2, {0.5 * (1.0 + 1i), 0.5 * (1.0 - 1i), 0.5 * (1.0 - 1i), 0.5 * (1.0 + 1i)});
  }
  if (!branch) throw std::invalid_argument("the qutrit root gate needs a root branch");
  if (branch->r1 > 2 || branch->r2 > 2) throw std::invalid_argument("root branch indices must be in {0,1,2}");
  const auto root_of_unity = [](double numerator, double denominator) {
    return std::polar(1.0, 2.0 * std::numbers::pi * numerator / denominator);
  };
  const Amplitude a = root_of_unity(1, 3);
  const std::array<std::array<Amplitude, 3>, 3> s{{{1.0, 1.0, 1.0}, {1.0, a, a * a}, {1.0, a * a, a}}};
  // S is 3^{1/2} times a unitary, so S^{-1} = S^dagger / 3.
  const std::array<Amplitude, 3> eig_roots{1.0, root_of_unity(1 + 3 * branch->r1, 9),
                                           root_of_unity(2 + 3 * branch->r2, 9)};
  std::vector<Amplitude> e(9);
  for (unsigned r = 0; r < 3; ++r)
    for (unsigned c = 0; c < 3; ++c)
      for (unsigned t = 0; t < 3; ++t) e[r * 3 + c] += std::conj(s[t][r]) * eig_roots[t] * s[t][c] / 3.0;
  return LocalGate(3, std::move(e));
}

/// New state with `gate` applied to tensor factor `party` (1-based, party 1 most significant).
inline QuditState apply_local(const QuditState& state, const LocalGate& gate, unsigned party) {
  const unsigned d = state.dim();
  if (gate.dim() != d) throw std::invalid_argument("gate dimension does not match state dimension");
  if (party < 1 || party > state.parties()) throw std::out_of_range("party index out of range");
  std::size_t stride = 1;
  for (unsigned i = party; i < state.parties(); ++i) stride *= d;
  const auto in = state.amplitudes();
  std::vector<Amplitude> out(in.size());
  const std::size_t block = stride * d;
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t offset = 0; offset < stride; ++offset) {
      const std::size_t first = base + offset;
      for (unsigned r = 0; r < d; ++r) {
        Amplitude acc = 0.0;
        for (unsigned c = 0; c < d; ++c) acc += gate(r, c) * in[first + c * stride];
        out[first + r * stride] = acc;
      }
    }
  }
  return QuditState(d, state.parties(), std::move(out));
}

/// Cumulative outcome distribution of a full computational-basis measurement.
class MeasurementSampler {
 public:
  explicit MeasurementSampler(const QuditState& state) : d_(state.dim()), k_(state.parties()) {
    cumulative_.reserve(state.size());
    double running = 0.0;
    for (const auto& a : state.amplitudes()) cumulative_.push_back(running += std::norm(a));
  }

  std::size_t sample_index(SeededSource& rng) const {
    const double u = rng.unit() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    // upper_bound never selects a zero-probability entry.
    return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }

  std::size_t size() const { return cumulative_.size(); }

  std::string sample(SeededSource& rng) const { return QuditState::digits_of(d_, k_, sample_index(rng)); }

 private:
  unsigned d_;
  unsigned k_;
  std::vector<double> cumulative_;
};

/// Samples one outcome string with probability |amplitude|^2.
inline std::string measure_all(const QuditState& state, SeededSource& rng) {
  return MeasurementSampler(state).sample(rng);
}

/// Best phase c with actual ~ c * target (target normalized), and the residual.
struct PhaseMatch {
  Amplitude phase{1.0, 0.0};
  /// max(entrywise |actual - c target|, ||c| - 1|).
  double deviation = 0.0;
};

inline PhaseMatch match_up_to_phase(const QuditState& actual, const QuditState& target) {
  Amplitude overlap = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) overlap += std::conj(target[i]) * actual[i];
  const double spread = max_deviation(actual, target, overlap);
  return {overlap, std::max(spread, std::abs(std::abs(overlap) - 1.0))};
}

struct SumClassMatch {
  unsigned sum_class = 0;
  Amplitude phase{1.0, 0.0};
  double deviation = 0.0;
};

/// Identifies the state as phase * (normalized class state j), qutrits only.
inline std::optional<SumClassMatch> classify_sum_class(const QuditState& state, double tol) {
  if (state.dim() != 3) throw std::invalid_argument("sum-class classification is defined for qutrits");
  for (unsigned j = 0; j < 3; ++j) {
    const PhaseMatch match = match_up_to_phase(state, make_sum_class_state(state.parties(), j, 3));
    if (match.deviation <= tol) return SumClassMatch{j, match.phase, match.deviation};
  }
  return std::nullopt;
}

/// Result of applying U (x) U (x) U to the three 3-party class states.
struct TensorCubeCheck {
  /// Phase c_p with (U^{(x)3}) [p]^3 ~ c_p [p+1]^3, per p.
  std::array<Amplitude, 3> phases{};
  /// Largest entrywise deviation, including the spread between the c_p.
  double max_deviation = 0.0;
  bool passes(double tol) const { return max_deviation <= tol; }
};

inline TensorCubeCheck check_tensor_cube(const LocalGate& gate) {
  if (gate.dim() != 3) throw std::invalid_argument("tensor-cube check needs a qutrit gate");
  TensorCubeCheck check;
  for (unsigned p = 0; p < 3; ++p) {
    QuditState evolved = make_sum_class_state(3, p);
    for (unsigned party = 1; party <= 3; ++party) evolved = apply_local(evolved, gate, party);
    const PhaseMatch match = match_up_to_phase(evolved, make_sum_class_state(3, (p + 1) % 3));
    check.phases[p] = match.phase;
    check.max_deviation = std::max(check.max_deviation, match.deviation);
  }
  for (unsigned p = 1; p < 3; ++p) {
    check.max_deviation = std::max(check.max_deviation, std::abs(check.phases[p] - check.phases[0]));
  }
  return check;
}

/// The qubit root gate on both parties of the parity-0 state (|00> + |11>)/sqrt2,
/// matched against the parity-1 state (|01> + |10>)/sqrt2.
inline PhaseMatch check_qubit_swap(const LocalGate& gate) {
  if (gate.dim() != 2) throw std::invalid_argument("qubit swap check needs a qubit gate");
  QuditState evolved = make_sum_class_state(2, 0, 2);
  evolved = apply_local(apply_local(evolved, gate, 1), gate, 2);
  return match_up_to_phase(evolved, make_sum_class_state(2, 1, 2));
}

struct BranchSearchResult {
  RootBranch branch;
  Amplitude phase;
  double deviation = 0.0;
  /// Deviation of every candidate, indexed 3 * r1 + r2.
  std::array<double, 9> candidate_deviations{};
};

/// Brute-force search over all nine root branches, in (r1, r2) lexicographic
/// order; returns the first branch whose gate cube is the shift and whose
/// tensor cube advances every 3-party sum class with one common phase.
/// Throws std::runtime_error if no branch qualifies.
inline BranchSearchResult find_valid_root_branch(double tol = kUnitTolerance) {
  const LocalGate shift = permutation_gate(3);
  std::optional<BranchSearchResult> found;
  std::array<double, 9> deviations{};
  for (unsigned r1 = 0; r1 < 3; ++r1) {
    for (unsigned r2 = 0; r2 < 3; ++r2) {
      const RootBranch branch{r1, r2};
      const LocalGate gate = root_gate(3, branch);
      const TensorCubeCheck cube = check_tensor_cube(gate);
      const double deviation = std::max(cube.max_deviation, gate.power(3).max_deviation(shift));
      deviations[3 * r1 + r2] = deviation;
      if (!found && deviation <= tol) found = BranchSearchResult{branch, cube.phases[0], deviation, {}};
    }
  }
  if (!found) throw std::runtime_error("no root branch satisfies the tensor-cube lemma");
  found->candidate_deviations = deviations;
  return *found;
}

}  // namespace tritccp::qudit
