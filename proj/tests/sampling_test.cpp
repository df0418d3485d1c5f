// Copyright 2026 The hogbatch-w2v Authors. All Rights Reserved.
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
// =============================================================================

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "w2v/error.hpp"
#include "w2v/sampling.hpp"

namespace w2v {
namespace {

TEST(Rng, MatchesReferenceRecurrence) {
  Rng rng(1);
  std::uint64_t s = 1;
  for (int i = 0; i < 100; ++i) {
    s = s * 25214903917ULL + 11ULL;
    EXPECT_EQ(rng.next(), s);
  }
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.draw(), b.draw());
}

TEST(Rng, Uniform16InUnitInterval) {
  Rng rng(5);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform16();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(UnigramTable, TwoWordShares) {
  const std::vector<std::uint64_t> counts{4, 1};
  const UnigramTable table(counts, 0.75, 100000);
  std::size_t zeros = 0;
  for (auto id : table.slots()) zeros += id == 0;
  // 4^0.75 / (4^0.75 + 1)
  const double share = 0.7387961250362586;
  EXPECT_LE(std::abs(static_cast<double>(zeros) - share * 100000), 1.0);
}

TEST(UnigramTable, EverySlotShareWithinOneSlot) {
  const std::vector<std::uint64_t> counts{1000, 400, 77, 30, 30, 9, 2, 1, 1};
  for (double power : {0.75, 1.0, 0.0, 0.5}) {
    for (std::size_t size : {std::size_t{9}, std::size_t{1000}, std::size_t{12345}}) {
      const UnigramTable table(counts, power, size);
      ASSERT_EQ(table.size(), size);
      std::vector<std::size_t> hits(counts.size());
      for (auto id : table.slots()) {
        ASSERT_LT(id, counts.size());
        ++hits[id];
      }
      double z = 0;
      for (auto c : counts) z += std::pow(static_cast<double>(c), power);
      for (std::size_t w = 0; w < counts.size(); ++w) {
        const double expected = std::pow(static_cast<double>(counts[w]), power) / z * static_cast<double>(size);
        EXPECT_LE(std::abs(static_cast<double>(hits[w]) - expected), 1.0 + 1e-9)
            << "power " << power << " size " << size << " word " << w;
      }
    }
  }
}

TEST(UnigramTable, SeededDrawsReplayTheGenerator) {
  const std::vector<std::uint64_t> counts{4, 1};
  constexpr std::size_t kSize = 1000;
  const UnigramTable table(counts, 0.75, kSize);
  // Word 0 owns the first round(0.7387961250362586 * 1000) = 739 slots.
  Rng rng(42);
  std::uint64_t state = 42;
  for (int i = 0; i < 1000; ++i) {
    state = state * 25214903917ULL + 11ULL;
    const std::size_t slot = (state >> 16) % kSize;
    ASSERT_EQ(sample_any(table, rng), slot < 739 ? 0u : 1u) << i;
  }
}

TEST(SampleNegative, SingleWordTable) {
  const std::vector<std::uint64_t> counts{3};
  const UnigramTable table(counts, 0.75, 10);
  Rng rng(1);
  EXPECT_EQ(sample_negative(table, rng, 7), 0u);
}

TEST(UnigramTable, RejectsTinyTable) {
  const std::vector<std::uint64_t> counts{3, 2, 1};
  EXPECT_THROW(UnigramTable(counts, 0.75, 2), ConfigError);
}

TEST(DynamicWindow, UniformOverOneToMax) {
  Rng rng(9);
  std::map<int, int> hist;
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) ++hist[dynamic_window(5, rng)];
  ASSERT_EQ(hist.size(), 5u);
  for (int b = 1; b <= 5; ++b) EXPECT_NEAR(hist[b] / double(kDraws), 0.2, 0.01) << b;
}

TEST(SampleNegative, EmpiricalDistributionMatchesTable) {
  const std::vector<std::uint64_t> counts{50, 20, 10, 5, 1};
  const UnigramTable table(counts, 0.75, 100000);
  Rng rng(3);
  std::vector<double> hits(counts.size());
  constexpr int kDraws = 1'000'000;
  for (int i = 0; i < kDraws; ++i) hits[sample_any(table, rng)] += 1;
  double z = 0;
  for (auto c : counts) z += std::pow(static_cast<double>(c), 0.75);
  double tv = 0;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    tv += std::abs(hits[w] / kDraws - std::pow(static_cast<double>(counts[w]), 0.75) / z);
  }
  EXPECT_LT(tv / 2, 0.01);
}

TEST(SampleNegative, NeverReturnsExcludedWord) {
  const std::vector<std::uint64_t> counts{50, 20, 10};
  const UnigramTable table(counts, 0.75, 1000);
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) EXPECT_NE(sample_negative(table, rng, 0), 0u);
}

TEST(SampleNegative, FallsBackAfterRedraws) {
  const std::vector<std::uint64_t> counts{100, 1};
  const std::vector<std::uint64_t> one{5};
  const UnigramTable single(one, 0.75, 4);
  Rng rng(1);
  EXPECT_EQ(sample_negative(single, rng, 0), 0u);  // (0 + 1) mod 1
  const UnigramTable two(counts, 0.75, 2);
  EXPECT_EQ(sample_negative(two, rng, 0), 1u);
}

TEST(Sigmoid, KnownValues) {
  EXPECT_DOUBLE_EQ(sigmoid_exact(0.0), 0.5);
  EXPECT_NEAR(sigmoid_exact(6.0), 0.9975273768433653, 1e-15);
  EXPECT_DOUBLE_EQ(sigmoid_table(7.0), 1.0);
  EXPECT_DOUBLE_EQ(sigmoid_table(-7.0), 0.0);
  EXPECT_NEAR(sigmoid_table(0.0), 0.5, 1e-12);
}

TEST(Sigmoid, TableWithinToleranceOfExactInsideRange) {
  for (double x = -6.0; x <= 6.0; x += 0.0007) {
    EXPECT_LE(std::abs(sigmoid_table(x) - sigmoid_exact(x)), 0.01) << x;
  }
}

TEST(Sigmoid, MonotoneAndBounded) {
  for (auto mode : {SigmoidMode::exact, SigmoidMode::table}) {
    double prev = -1;
    for (double x = -10; x <= 10; x += 0.01) {
      const double s = sigmoid(x, mode);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
      EXPECT_GE(s, prev);
      prev = s;
    }
  }
}

TEST(SgnsError, TableModeDropsSaturatedScores) {
  EXPECT_EQ(sgns_error(7.0, 1.0, SigmoidMode::table), 0.0);
  EXPECT_EQ(sgns_error(-7.0, 0.0, SigmoidMode::table), 0.0);
  EXPECT_GT(sgns_error(-7.0, 1.0, SigmoidMode::exact), 0.99);
  EXPECT_DOUBLE_EQ(sgns_error(0.0, 1.0, SigmoidMode::exact), 0.5);
  EXPECT_DOUBLE_EQ(sgns_error(0.0, 0.0, SigmoidMode::exact), -0.5);
}

}  // namespace
}  // namespace w2v
