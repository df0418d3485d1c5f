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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace w2v {

using WordId = std::uint32_t;

inline constexpr std::size_t kDefaultMaxSentenceLength = 1000;

struct VocabEntry {
  std::string token;
  std::uint64_t count = 0;
};

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};
}  // namespace detail

/// Word <-> id map ordered by descending count (ties lexicographic), so id 0
/// is the most frequent word. Immutable once built.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Filters by min_count and sorts. Throws EmptyVocabularyError when nothing survives.
  static Vocabulary from_counts(const std::unordered_map<std::string, std::uint64_t, detail::StringHash,
                                                         std::equal_to<>>& counts,
                                std::uint64_t min_count);

  /// Takes entries already in id order (as written by save()).
  static Vocabulary from_entries(std::vector<VocabEntry> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::string& token(WordId id) const { return entries_.at(id).token; }
  std::uint64_t count(WordId id) const { return entries_.at(id).count; }
  std::uint64_t total_words() const noexcept { return total_words_; }
  std::span<const VocabEntry> entries() const noexcept { return entries_; }
  std::optional<WordId> find(std::string_view token) const;

  /// Per-word keep probabilities for frequent-word subsampling.
  std::vector<double> keep_probabilities(double sample) const;

  /// One `token count` line per word, in id order.
  void save(std::ostream& out) const;
  static Vocabulary load(std::istream& in);

 private:
  std::vector<VocabEntry> entries_;
  std::unordered_map<std::string, WordId, detail::StringHash, std::equal_to<>> index_;
  std::uint64_t total_words_ = 0;
};

/// min(1, (sqrt(z) + 1) / z) with z = count / (sample * total_words); 1 when sample == 0.
double keep_probability(std::uint64_t count, double sample, std::uint64_t total_words);

/// Accumulates raw token counts.
class VocabularyBuilder {
 public:
  void add(std::string_view token);
  std::uint64_t tokens_seen() const noexcept { return tokens_seen_; }
  Vocabulary build(std::uint64_t min_count) const;

 private:
  std::unordered_map<std::string, std::uint64_t, detail::StringHash, std::equal_to<>> counts_;
  std::uint64_t tokens_seen_ = 0;
};

/// Half-open byte interval [begin, end) of a corpus file.
struct ByteRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const noexcept { return end - begin; }
  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

/// Whitespace tokenizer over a byte stream. Newline ends a sentence; any other
/// ASCII whitespace separates tokens.
class TokenStream {
 public:
  enum class Kind { word, end_of_line, end_of_stream };

  explicit TokenStream(std::istream& in, std::uint64_t limit = std::numeric_limits<std::uint64_t>::max(),
                       std::uint64_t base_offset = 0);

  Kind next(std::string& token);
  /// Absolute byte offset of the next unread byte.
  std::uint64_t offset() const noexcept { return base_offset_ + consumed_; }

 private:
  bool fill();

  std::istream& in_;
  std::uint64_t limit_;
  std::uint64_t base_offset_;
  std::uint64_t consumed_ = 0;
  std::vector<char> buffer_;
  std::size_t pos_ = 0;
  std::size_t len_ = 0;
  bool eof_ = false;
};

/// Counts every whitespace-separated token of `in` and filters by min_count.
Vocabulary build_vocab(std::istream& in, std::uint64_t min_count);
Vocabulary build_vocab(const std::filesystem::path& path, std::uint64_t min_count,
                       std::uint64_t byte_limit = std::numeric_limits<std::uint64_t>::max());

std::uint64_t file_size(const std::filesystem::path& path);

/// Splits [0, min(limit, size)) into `parts` ranges of roughly equal bytes, each
/// boundary moved forward to just past the next newline. Empty ranges are kept so
/// that the result always has `parts` entries.
std::vector<ByteRange> partition_lines(const std::filesystem::path& path, std::size_t parts,
                                       std::uint64_t limit = std::numeric_limits<std::uint64_t>::max());

/// Same as partition_lines but within an already line-aligned range.
std::vector<ByteRange> partition_range(const std::filesystem::path& path, ByteRange range, std::size_t parts);

/// Yields in-vocabulary word ids sentence by sentence. OOV tokens are dropped and
/// sentences longer than the cap are split. Lines with no in-vocab token are skipped.
class SentenceReader {
 public:
  SentenceReader(const std::filesystem::path& path, ByteRange range, const Vocabulary& vocab,
                 std::size_t max_sentence_length = kDefaultMaxSentenceLength);
  SentenceReader(std::istream& in, const Vocabulary& vocab,
                 std::size_t max_sentence_length = kDefaultMaxSentenceLength);

  bool next(std::vector<WordId>& sentence);
  /// Restarts at the beginning of the range (file-backed readers only).
  void rewind();
  std::uint64_t offset() const noexcept { return tokens_->offset(); }

 private:
  std::unique_ptr<std::istream> owned_;
  std::istream* in_;
  ByteRange range_;
  const Vocabulary* vocab_;
  std::size_t cap_;
  std::unique_ptr<TokenStream> tokens_;
  std::string token_;
};

/// Convenience: every sentence of `in`.
std::vector<std::vector<WordId>> iter_sentences(std::istream& in, const Vocabulary& vocab,
                                                std::size_t max_sentence_length = kDefaultMaxSentenceLength);

}  // namespace w2v
