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

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "w2v/corpus.hpp"

namespace w2v {

/// The 64-bit linear congruential generator of the reference word2vec tool.
/// Every draw advances the state once; consumers take bits from `draw()`,
/// which drops the 16 weakest low-order bits.
class Rng {
 public:
  static constexpr std::uint64_t kMultiplier = 25214903917ULL;
  static constexpr std::uint64_t kIncrement = 11ULL;

  constexpr explicit Rng(std::uint64_t seed = 1) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }
  constexpr std::uint64_t draw() noexcept { return next() >> 16; }
  /// Uniform in [0, 1) with 16 bits of resolution.
  constexpr double uniform16() noexcept { return static_cast<double>(draw() & 0xFFFF) / 65536.0; }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

inline constexpr double kDefaultNegativePower = 0.75;
inline constexpr std::size_t kDefaultTableSize = 100'000'000;
inline constexpr int kMaxNegativeRedraws = 100;

/// Unigram^power lookup table; a uniform slot index yields a word id with
/// probability proportional to count^power.
class UnigramTable {
 public:
  UnigramTable() = default;
  UnigramTable(std::span<const std::uint64_t> counts, double power, std::size_t table_size);

  std::size_t size() const noexcept { return table_.size(); }
  std::size_t vocab_size() const noexcept { return vocab_size_; }
  double power() const noexcept { return power_; }
  WordId operator[](std::size_t slot) const noexcept { return table_[slot]; }
  std::span<const WordId> slots() const noexcept { return table_; }

 private:
  std::vector<WordId> table_;
  std::size_t vocab_size_ = 0;
  double power_ = kDefaultNegativePower;
};

/// Throws ConfigError when table_size < V.
UnigramTable build_unigram_table(const Vocabulary& vocab, double power = kDefaultNegativePower,
                                 std::size_t table_size = kDefaultTableSize);

/// One draw from the table, redrawn while it equals `exclude`. After
/// kMaxNegativeRedraws failed draws returns (exclude + 1) mod V.
WordId sample_negative(const UnigramTable& table, Rng& rng, WordId exclude);
/// Literal draw with no exclusion.
inline WordId sample_any(const UnigramTable& table, Rng& rng) {
  return table[static_cast<std::size_t>(rng.draw() % table.size())];
}

/// Effective half-window, uniform over [1, max_window].
inline int dynamic_window(int max_window, Rng& rng) {
  return max_window - static_cast<int>(rng.draw() % static_cast<std::uint64_t>(max_window));
}

enum class SigmoidMode { exact, table };

inline constexpr double kSigmoidTableBound = 6.0;
inline constexpr int kSigmoidTableBins = 1000;

namespace detail {
const std::array<double, kSigmoidTableBins + 1>& sigmoid_knots();
}

/// 1 / (1 + e^-x).
template <class Real>
Real sigmoid_exact(Real x) {
  return Real(1) / (Real(1) + std::exp(-x));
}

/// Piecewise-linear interpolation of the logistic function over [-6, 6] in
/// 1000 bins; 0 below the range and 1 above it.
template <class Real>
Real sigmoid_table(Real x) {
  if (x >= Real(kSigmoidTableBound)) return Real(1);
  if (x <= Real(-kSigmoidTableBound)) return Real(0);
  const auto& knots = detail::sigmoid_knots();
  const double pos = (static_cast<double>(x) + kSigmoidTableBound) * (kSigmoidTableBins / (2 * kSigmoidTableBound));
  const int bin = std::min(static_cast<int>(pos), kSigmoidTableBins - 1);
  const double frac = pos - bin;
  return static_cast<Real>(knots[bin] + frac * (knots[bin + 1] - knots[bin]));
}

template <class Real>
Real sigmoid(Real x, SigmoidMode mode = SigmoidMode::exact) {
  return mode == SigmoidMode::exact ? sigmoid_exact(x) : sigmoid_table(x);
}

/// label - sigmoid(score), with the table-mode rule that scores beyond the
/// table bound produce no gradient.
template <class Real>
Real sgns_error(Real score, Real label, SigmoidMode mode) {
  if (mode == SigmoidMode::table && std::abs(score) > Real(kSigmoidTableBound)) return Real(0);
  return label - sigmoid(score, mode);
}

}  // namespace w2v
