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

#include "w2v/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "w2v/error.hpp"

namespace w2v {

UnigramTable::UnigramTable(std::span<const std::uint64_t> counts, double power, std::size_t table_size)
    : vocab_size_(counts.size()), power_(power) {
  if (counts.empty()) throw EmptyVocabularyError("cannot build a unigram table for an empty vocabulary");
  if (table_size < counts.size()) {
    throw ConfigError("unigram table size " + std::to_string(table_size) + " is smaller than the vocabulary (" +
                      std::to_string(counts.size()) + ")");
  }
  long double total = 0;
  for (auto c : counts) total += std::pow(static_cast<long double>(c), power);

  // Word i owns slots [round(F(i-1) * size), round(F(i) * size)) where F is the
  // cumulative share, so each word is within one slot of its exact share.
  table_.resize(table_size);
  long double cumulative = 0;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    cumulative += std::pow(static_cast<long double>(counts[i]), power);
    std::size_t end = i + 1 == counts.size()
                          ? table_size
                          : std::min(table_size, static_cast<std::size_t>(std::llround(cumulative / total * table_size)));
    end = std::max(end, begin);
    std::fill(table_.begin() + static_cast<std::ptrdiff_t>(begin), table_.begin() + static_cast<std::ptrdiff_t>(end),
              static_cast<WordId>(i));
    begin = end;
  }
}

UnigramTable build_unigram_table(const Vocabulary& vocab, double power, std::size_t table_size) {
  std::vector<std::uint64_t> counts;
  counts.reserve(vocab.size());
  for (const auto& e : vocab.entries()) counts.push_back(e.count);
  return UnigramTable(counts, power, table_size);
}

WordId sample_negative(const UnigramTable& table, Rng& rng, WordId exclude) {
  for (int attempt = 0; attempt < kMaxNegativeRedraws; ++attempt) {
    const WordId word = sample_any(table, rng);
    if (word != exclude) return word;
  }
  return static_cast<WordId>((static_cast<std::size_t>(exclude) + 1) % table.vocab_size());
}

namespace detail {

const std::array<double, kSigmoidTableBins + 1>& sigmoid_knots() {
  static const auto knots = [] {
    std::array<double, kSigmoidTableBins + 1> k{};
    for (int i = 0; i <= kSigmoidTableBins; ++i) {
      const double x = -kSigmoidTableBound + 2 * kSigmoidTableBound * i / kSigmoidTableBins;
      k[i] = 1.0 / (1.0 + std::exp(-x));
    }
    return k;
  }();
  return knots;
}

}  // namespace detail

}  // namespace w2v
