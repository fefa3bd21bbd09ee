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
 * Exact binomial machinery: big-integer binomials, binomial sums over an
 * arithmetic progression of lower indices, and the trigonometric closed
 * form (Ramus identity) for those sums.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace tritccp {

/// Arbitrary-precision nonnegative count. Never rounded.
using BigCount = boost::multiprecision::cpp_int;
/// Exact reduced rational; converted to floating point only for display.
using Rational = boost::multiprecision::cpp_rational;

/// An element of {0,1,2}.
using Trit = std::uint8_t;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parameters of the sum C(n,q) + C(n,q+p) + C(n,q+2p) + ...
struct GroupedSumSpec {
  std::int64_t n = 0;
  std::int64_t q = 0;
  std::int64_t p = 1;
};

/// C(n, r) exactly; zero outside 0 <= r <= n.
inline BigCount binomial(std::int64_t n, std::int64_t r) {
  if (n < 0 || r < 0 || r > n) return 0;
  if (r > n - r) r = n - r;
  BigCount result = 1;
  for (std::int64_t i = 1; i <= r; ++i) {
    result *= n - r + i;
    result /= i;  // exact: result is C(n - r + i, i) here
  }
  return result;
}

/// n! / (parts[0]! parts[1]! ...), where n is the sum of parts.
inline BigCount multinomial(std::span<const std::uint64_t> parts) {
  BigCount result = 1;
  std::int64_t running = 0;
  for (const auto part : parts) {
    running += static_cast<std::int64_t>(part);
    result *= binomial(running, static_cast<std::int64_t>(part));
  }
  return result;
}

inline BigCount pow_big(unsigned base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exponent));
}

namespace detail {
inline void check_step(const GroupedSumSpec& spec) {
  if (spec.p < 1) throw std::invalid_argument("grouped sum step p must be >= 1");
  if (spec.q < 0) throw std::invalid_argument("grouped sum start q must be >= 0");
}
}  // namespace detail

/// Sum of C(n, q + i*p) over i >= 0. Empty when q > n.
inline BigCount grouped_sum(const GroupedSumSpec& spec) {
  detail::check_step(spec);
  BigCount total = 0;
  for (std::int64_t r = spec.q; r <= spec.n; r += spec.p) total += binomial(spec.n, r);
  return total;
}

/// The primed variant: equal to grouped_sum for n > 0 and 1 otherwise.
inline BigCount grouped_sum_primed(const GroupedSumSpec& spec) {
  detail::check_step(spec);
  if (spec.n <= 0) return 1;
  return grouped_sum(spec);
}

/// Closed form (1/p) sum_{0<=i<p} (2 cos(i pi/p))^n cos(i (n-2q) pi/p),
/// evaluated in the floating type Real. Real must support cos via ADL
/// (double, long double, or a Boost.Multiprecision float).
template <class Real>
Real ramus_as(const GroupedSumSpec& spec) {
  detail::check_step(spec);
  using std::cos;
  const Real pi = boost::math::constants::pi<Real>();
  Real total = 0;
  for (std::int64_t i = 0; i < spec.p; ++i) {
    const Real angle = pi * Real(i) / Real(spec.p);
    const Real base = Real(2) * cos(angle);
    Real term = 1;
    for (std::int64_t e = 0; e < spec.n; ++e) term *= base;
    total += term * cos(angle * Real(spec.n - 2 * spec.q));
  }
  return total / Real(spec.p);
}

inline double ramus(const GroupedSumSpec& spec) { return ramus_as<double>(spec); }

/// Sum of trits modulo 3.
inline Trit trit_add(std::span<const Trit> values) {
  unsigned sum = 0;
  for (const auto v : values) {
    if (v > 2) throw std::invalid_argument("trit out of range: " + std::to_string(v));
    sum += v;
  }
  return static_cast<Trit>(sum % 3);
}

}  // namespace tritccp
