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
 * Upper-bound quotients for groups of 3j+1 parties sharing one division,
 * and their convergence tables.
 *
 * Every quotient is an exact rational built from binomial sums over
 * arithmetic progressions (see combinatorics.hpp). With N = 3j + 1:
 *
 *   A^{i,m} = (N; 1+i+m step 9) / (N; 1+i step 3)
 *   F^a     = [2 C(N,a) + sum_{m=3,6..} C(N,a+m) (a+m; i_m step 3)]
 *             / sum_{m=0,3..} C(N,a+m) 2^{a+m}
 *   L^a     = sum_m C(N,a+m) sum_{b+c = i_m mod 3} (a+m; b step 3)' (N-a-m; c step 3)'
 *             / sum_m C(N,a+m) 2^N
 *   N^a     = sum_m C(N,m+a) 3^{+(m+a-1)} / sum_m C(N,m+a) 3^{m+a}
 *
 * where m runs over multiples of 3 with a + m <= N.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tritccp/combinatorics.hpp"

namespace tritccp::bounds {

/// +(z) = z for positive z, 0 otherwise.
constexpr std::int64_t plus_op(std::int64_t z) { return z > 0 ? z : 0; }

/// How the residue i_m is chosen for each m in F^a and L^a.
///
/// The worst-case rule takes, term by term, the largest value over the three
/// residues, so the quotient dominates the one for any concrete choice.
class ImRule {
 public:
  static ImRule worst_case() { return ImRule(); }
  static ImRule constant(unsigned residue) {
    if (residue > 2) throw std::invalid_argument("i_m must be in {0,1,2}");
    ImRule rule;
    rule.fixed_ = residue;
    rule.name_ = std::to_string(residue);
    return rule;
  }
  static ImRule custom(std::function<unsigned(std::int64_t m)> rule, std::string name) {
    ImRule out;
    out.custom_ = std::move(rule);
    out.name_ = std::move(name);
    return out;
  }
  /// "max", "0", "1" or "2".
  static ImRule parse(const std::string& text) {
    if (text == "max") return worst_case();
    if (text == "0" || text == "1" || text == "2") return constant(static_cast<unsigned>(text[0] - '0'));
    throw std::invalid_argument("unknown im rule '" + text + "'");
  }

  const std::string& name() const { return name_; }

  /// term(r) for the selected residue at this m, or the max over r for the worst case.
  template <class Term>
  BigCount select(std::int64_t m, Term&& term) const {
    if (fixed_) return term(*fixed_);
    if (custom_) {
      const unsigned r = custom_(m);
      if (r > 2) throw std::out_of_range("custom i_m rule returned a non-residue");
      return term(r);
    }
    BigCount best = term(0u);
    for (unsigned r = 1; r < 3; ++r) {
      BigCount v = term(r);
      if (v > best) best = std::move(v);
    }
    return best;
  }

 private:
  ImRule() = default;
  std::optional<unsigned> fixed_;
  std::function<unsigned(std::int64_t)> custom_;
  std::string name_ = "max";
};

namespace detail {
inline std::int64_t group_size(std::int64_t j) {
  if (j < 1) throw std::invalid_argument("j must be >= 1");
  return 3 * j + 1;
}
inline void check_residue(unsigned a) {
  if (a > 2) throw std::invalid_argument("a must be in {0,1,2}");
}
}  // namespace detail

inline Rational bound_a(std::int64_t j, unsigned i, unsigned m) {
  const auto n = detail::group_size(j);
  if (i > 1) throw std::invalid_argument("i must be in {0,1}");
  if (m != 0 && m != 3 && m != 6) throw std::invalid_argument("m must be in {0,3,6}");
  return Rational(grouped_sum({n, 1 + i + m, 9}), grouped_sum({n, 1 + i, 3}));
}

inline Rational bound_f(std::int64_t j, unsigned a, const ImRule& rule = ImRule::worst_case()) {
  const auto n = detail::group_size(j);
  detail::check_residue(a);
  BigCount numerator = 2 * binomial(n, a);
  BigCount denominator = 0;
  for (std::int64_t m = 0; a + m <= n; m += 3) {
    const std::int64_t size = a + m;
    denominator += binomial(n, size) * pow_big(2, static_cast<std::uint64_t>(size));
    if (m == 0) continue;
    numerator += binomial(n, size) * rule.select(m, [&](unsigned r) { return grouped_sum({size, r, 3}); });
  }
  return Rational(numerator, denominator);
}

/// Inner sum of L^a: sum over (b, c) in {0,1,2}^2 with b + c = residue (mod 3).
inline BigCount l_inner_sum(std::int64_t zero_group, std::int64_t one_group, unsigned residue) {
  BigCount total = 0;
  for (unsigned b = 0; b < 3; ++b) {
    const unsigned c = (residue + 3 - b) % 3;
    total += grouped_sum_primed({zero_group, b, 3}) * grouped_sum_primed({one_group, c, 3});
  }
  return total;
}

inline Rational bound_l(std::int64_t j, unsigned a, const ImRule& rule = ImRule::worst_case()) {
  const auto n = detail::group_size(j);
  detail::check_residue(a);
  BigCount numerator = 0;
  BigCount weight = 0;
  for (std::int64_t m = 0; a + m <= n; m += 3) {
    const std::int64_t size = a + m;
    const BigCount c = binomial(n, size);
    numerator += c * rule.select(m, [&](unsigned r) { return l_inner_sum(size, n - size, r); });
    weight += c;
  }
  return Rational(numerator, weight * pow_big(2, static_cast<std::uint64_t>(n)));
}

inline Rational bound_n(std::int64_t j, unsigned a) {
  const auto n = detail::group_size(j);
  detail::check_residue(a);
  BigCount numerator = 0;
  BigCount denominator = 0;
  for (std::int64_t m = 0; a + m <= n; m += 3) {
    const std::int64_t size = a + m;
    const BigCount c = binomial(n, size);
    numerator += c * pow_big(3, static_cast<std::uint64_t>(plus_op(size - 1)));
    denominator += c * pow_big(3, static_cast<std::uint64_t>(size));
  }
  return Rational(numerator, denominator);
}

enum class Family { kA, kF, kL, kN };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::kA: return "A";
    case Family::kF: return "F";
    case Family::kL: return "L";
    case Family::kN: return "N";
  }
  return "?";
}

inline Family parse_family(const std::string& name) {
  if (name == "A") return Family::kA;
  if (name == "F") return Family::kF;
  if (name == "L") return Family::kL;
  if (name == "N") return Family::kN;
  throw std::invalid_argument("unknown bound family '" + name + "'");
}

/// One table row. Parameters that do not apply to the family are empty;
/// a headline row (max over the family's parameters) has `headline` set
/// and no parameters.
struct BoundRow {
  Family family = Family::kA;
  std::int64_t j = 0;
  std::optional<unsigned> i;
  std::optional<unsigned> m;
  std::optional<unsigned> a;
  std::string im_rule;  // empty for A and N
  bool headline = false;
  Rational value;

  double value_float() const { return to_double(value); }
  double gap_float() const { return to_double(value - Rational(1, 3)); }
};

/// Rows for every parameter point of `family` at each j, followed per j by
/// the headline max over those points.
inline std::vector<BoundRow> convergence_table(Family family, const std::vector<std::int64_t>& js,
                                               const ImRule& rule = ImRule::worst_case()) {
  std::vector<BoundRow> rows;
  for (const auto j : js) {
    std::vector<BoundRow> block;
    const std::string rule_name = (family == Family::kF || family == Family::kL) ? rule.name() : "";
    if (family == Family::kA) {
      for (unsigned i = 0; i < 2; ++i)
        for (unsigned m = 0; m <= 6; m += 3) block.push_back({family, j, i, m, std::nullopt, rule_name, false, bound_a(j, i, m)});
    } else {
      for (unsigned a = 0; a < 3; ++a) {
        Rational v = family == Family::kF ? bound_f(j, a, rule) : family == Family::kL ? bound_l(j, a, rule) : bound_n(j, a);
        block.push_back({family, j, std::nullopt, std::nullopt, a, rule_name, false, std::move(v)});
      }
    }
    BoundRow headline{family, j, std::nullopt, std::nullopt, std::nullopt, rule_name, true, block.front().value};
    for (const auto& row : block)
      if (row.value > headline.value) headline.value = row.value;
    rows.insert(rows.end(), block.begin(), block.end());
    rows.push_back(std::move(headline));
  }
  return rows;
}

}  // namespace tritccp::bounds
