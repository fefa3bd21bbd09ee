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

#include "tritccp/combinatorics.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gtest/gtest.h"

using namespace tritccp;

namespace {

// Independent oracle: Pascal's triangle by repeated addition.
std::vector<std::vector<BigCount>> pascal_rows(int max_n) {
  std::vector<std::vector<BigCount>> rows(max_n + 1);
  for (int n = 0; n <= max_n; ++n) {
    rows[n].assign(n + 1, 1);
    for (int r = 1; r < n; ++r) rows[n][r] = rows[n - 1][r - 1] + rows[n - 1][r];
  }
  return rows;
}

}  // namespace

TEST(Binomial, SmallValues) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(10, 4), 210);
  EXPECT_EQ(binomial(10, 7), 120);
  EXPECT_EQ(binomial(0, 0), 1);
}

TEST(Binomial, OutOfRangeIsZero) {
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(-1, 0), 0);
}

TEST(Binomial, MatchesPascalBeyond64Bits) {
  const auto rows = pascal_rows(181);
  for (int n = 0; n <= 181; n += (n < 70 ? 1 : 37)) {
    for (int r = 0; r <= n; ++r) ASSERT_EQ(binomial(n, r), rows[n][r]) << n << " choose " << r;
  }
  EXPECT_GT(binomial(181, 90), BigCount(UINT64_MAX));
}

TEST(Binomial, Symmetry) {
  for (int n = 0; n <= 50; ++n)
    for (int r = 0; r <= n; ++r) ASSERT_EQ(binomial(n, r), binomial(n, n - r));
}

TEST(Multinomial, MatchesFactorialQuotient) {
  const std::vector<std::uint64_t> parts{2, 3, 1};
  EXPECT_EQ(multinomial(parts), 60);  // 6! / (2! 3! 1!)
  const std::vector<std::uint64_t> single{7};
  EXPECT_EQ(multinomial(single), 1);
}

TEST(GroupedSum, Examples) {
  EXPECT_EQ(grouped_sum({3, 0, 3}), 2);
  EXPECT_EQ(grouped_sum({10, 1, 3}), 341);
  EXPECT_EQ(grouped_sum({5, 0, 1}), 32);
}

TEST(GroupedSum, EmptyIndexSetIsZero) {
  EXPECT_EQ(grouped_sum({3, 4, 3}), 0);
  EXPECT_EQ(grouped_sum({0, 1, 3}), 0);
}

TEST(GroupedSum, RejectsBadStep) {
  EXPECT_THROW(grouped_sum({3, 0, 0}), std::invalid_argument);
  EXPECT_THROW(grouped_sum({3, -1, 2}), std::invalid_argument);
}

TEST(GroupedSum, PrimedVariant) {
  EXPECT_EQ(grouped_sum_primed({0, 0, 3}), 1);
  EXPECT_EQ(grouped_sum_primed({0, 2, 3}), 1);
  EXPECT_EQ(grouped_sum_primed({3, 1, 3}), 3);
  EXPECT_EQ(grouped_sum_primed({10, 1, 3}), 341);
}

TEST(GroupedSum, ResiduesPartitionTheRow) {
  for (int n = 0; n <= 40; ++n) {
    for (int p = 1; p <= 9; ++p) {
      BigCount total = 0;
      for (int q = 0; q < p; ++q) total += grouped_sum({n, q, p});
      ASSERT_EQ(total, BigCount(1) << n) << "n=" << n << " p=" << p;
    }
  }
}

TEST(GroupedSum, UnitStepIsTailOfRow) {
  const auto rows = pascal_rows(30);
  for (int n = 0; n <= 30; ++n) {
    for (int q = 0; q <= n + 2; ++q) {
      BigCount head = 0;
      for (int r = 0; r < q && r <= n; ++r) head += rows[n][r];
      ASSERT_EQ(grouped_sum({n, q, 1}), (BigCount(1) << n) - head);
    }
  }
}

TEST(Ramus, Examples) {
  EXPECT_NEAR(ramus({3, 0, 3}), 2.0, 1e-12);
  EXPECT_NEAR(ramus({1, 0, 1}), 2.0, 1e-12);
  EXPECT_NEAR(ramus({10, 1, 3}), 341.0, 1e-9);
}

TEST(Ramus, RelativeErrorInDouble) {
  for (int n = 0; n <= 60; ++n) {
    for (int p = 2; p <= 9; ++p) {
      for (int q = 0; q < p; ++q) {
        const double exact = grouped_sum({n, q, p}).convert_to<double>();
        const double closed = ramus({n, q, p});
        ASSERT_LE(std::abs(closed - exact) / std::max(1.0, exact), 1e-9) << n << "," << q << "," << p;
      }
    }
  }
}

TEST(Ramus, RoundsToExactSumInExtendedPrecision) {
  using Wide = boost::multiprecision::cpp_bin_float_50;
  for (int n = 0; n <= 60; ++n) {
    for (int p = 2; p <= 9; ++p) {
      for (int q = 0; q < p; ++q) {
        const Wide closed = ramus_as<Wide>({n, q, p});
        ASSERT_EQ(BigCount(boost::multiprecision::round(closed)), grouped_sum({n, q, p}));
      }
    }
  }
}

TEST(TritAdd, Examples) {
  EXPECT_EQ(trit_add(std::vector<Trit>{}), 0);
  EXPECT_EQ(trit_add(std::vector<Trit>{2, 2}), 1);
  EXPECT_EQ(trit_add(std::vector<Trit>{1, 2, 0, 1}), 1);
  EXPECT_THROW(trit_add(std::vector<Trit>{3}), std::invalid_argument);
}
