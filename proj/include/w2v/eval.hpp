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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "w2v/corpus.hpp"
#include "w2v/model.hpp"

namespace w2v {

struct SimilarityPair {
  std::string word_a;
  std::string word_b;
  double human_score = 0;
};

/// a : b :: c : d
struct AnalogyQuestion {
  std::string a, b, c, d;
  std::string section;
};

inline constexpr std::size_t kDefaultAnalogyVocab = 30'000;

/// dot(u, v) / (|u| |v|), accumulated in double. Throws Error on a zero vector.
double cosine(std::span<const float> u, std::span<const float> v);

/// Ranks starting at 1; tied values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks). Throws
/// Error for fewer than two values or mismatched lengths; returns 0 when one
/// side is constant.
double spearman(std::span<const double> model_scores, std::span<const double> human_scores);

/// `word1 word2 score` separated by tabs, commas or spaces. Blank lines, lines
/// starting with '#', and a header whose score field is not numeric are skipped.
std::vector<SimilarityPair> load_similarity(const std::filesystem::path& path);

/// `questions-words.txt` layout: `: section` lines followed by `a b c d` lines.
std::vector<AnalogyQuestion> load_analogy(const std::filesystem::path& path);

/// Unit-normalized copy of a set of word vectors with a token lookup. With
/// case folding, ASCII letters are lowercased and the first (most frequent)
/// spelling of a folded token wins.
class EmbeddingIndex {
 public:
  explicit EmbeddingIndex(const WordVectors& vectors, bool case_insensitive = true,
                          std::size_t limit = static_cast<std::size_t>(-1));

  std::size_t size() const noexcept { return unit_.rows(); }
  std::size_t dim() const noexcept { return unit_.cols(); }
  std::optional<std::size_t> find(std::string_view token) const;
  std::span<const float> unit(std::size_t row) const { return unit_.row(row); }
  const Matrix<float>& unit_matrix() const noexcept { return unit_; }
  std::span<const float> raw(std::size_t row) const { return vectors_->vectors.row(row); }

 private:
  std::string fold(std::string_view token) const;

  const WordVectors* vectors_;
  bool case_insensitive_;
  Matrix<float> unit_;
  std::unordered_map<std::string, std::size_t, detail::StringHash, std::equal_to<>> index_;
};

struct SimilarityResult {
  std::optional<double> spearman;  // empty when fewer than two pairs are usable
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
};

SimilarityResult evaluate_similarity(const WordVectors& vectors, std::span<const SimilarityPair> pairs,
                                     bool case_insensitive = true);

struct SectionScore {
  std::string section;
  std::size_t correct = 0;
  std::size_t usable = 0;
  std::size_t skipped = 0;
  std::optional<double> accuracy;
};

struct AnalogyResult {
  std::optional<double> overall;  // empty when no question is usable
  std::size_t correct = 0;
  std::size_t usable = 0;
  std::size_t skipped = 0;
  std::vector<SectionScore> sections;  // in file order
  std::vector<std::optional<std::size_t>> predictions;  // row of the predicted word per question
};

/// 3CosAdd: the answer to a:b::c:? is the word among the first `top_vocab`
/// rows (a, b and c excluded) whose unit vector has the highest cosine with
/// unit(b) - unit(a) + unit(c). Questions with a word outside the first
/// `top_vocab` rows are skipped.
AnalogyResult analogy_accuracy(const WordVectors& vectors, std::span<const AnalogyQuestion> questions,
                               std::size_t top_vocab = kDefaultAnalogyVocab, bool case_insensitive = true);

}  // namespace w2v
