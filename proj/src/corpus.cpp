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

#include "w2v/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "w2v/error.hpp"

namespace w2v {

namespace {

constexpr std::size_t kReadChunk = 1 << 20;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::ifstream open_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string(), 0);
  return in;
}

}  // namespace

Vocabulary Vocabulary::from_counts(
    const std::unordered_map<std::string, std::uint64_t, detail::StringHash, std::equal_to<>>& counts,
    std::uint64_t min_count) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  std::vector<VocabEntry> entries;
  for (const auto& [token, count] : counts) {
    if (count >= min_count) entries.push_back({token, count});
  }
  if (entries.empty()) {
    throw EmptyVocabularyError("no token occurs at least " + std::to_string(min_count) + " times");
  }
  std::sort(entries.begin(), entries.end(), [](const VocabEntry& a, const VocabEntry& b) {
    return a.count != b.count ? a.count > b.count : a.token < b.token;
  });
  return from_entries(std::move(entries));
}

Vocabulary Vocabulary::from_entries(std::vector<VocabEntry> entries) {
  if (entries.empty()) throw EmptyVocabularyError("vocabulary is empty");
  if (entries.size() > std::numeric_limits<WordId>::max()) throw ConfigError("vocabulary too large");
  Vocabulary vocab;
  vocab.entries_ = std::move(entries);
  vocab.index_.reserve(vocab.entries_.size());
  for (WordId id = 0; id < vocab.entries_.size(); ++id) {
    const auto& e = vocab.entries_[id];
    if (e.count == 0) throw ConfigError("zero count for token '" + e.token + "'");
    if (!vocab.index_.emplace(e.token, id).second) throw ConfigError("duplicate token '" + e.token + "'");
    vocab.total_words_ += e.count;
  }
  return vocab;
}

std::optional<WordId> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<double> Vocabulary::keep_probabilities(double sample) const {
  std::vector<double> keep(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    keep[i] = keep_probability(entries_[i].count, sample, total_words_);
  }
  return keep;
}

void Vocabulary::save(std::ostream& out) const {
  for (const auto& e : entries_) out << e.token << ' ' << e.count << '\n';
  if (!out) throw IoError("failed writing vocabulary", 0);
}

Vocabulary Vocabulary::load(std::istream& in) {
  std::vector<VocabEntry> entries;
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    const std::uint64_t line_start = offset;
    offset += line.size() + 1;
    if (line.empty()) continue;
    std::istringstream fields(line);
    VocabEntry e;
    std::string extra;
    if (!(fields >> e.token >> e.count) || (fields >> extra)) {
      throw FormatError("malformed vocabulary line '" + line + "'", line_start);
    }
    entries.push_back(std::move(e));
  }
  if (in.bad()) throw IoError("failed reading vocabulary", offset);
  return from_entries(std::move(entries));
}

double keep_probability(std::uint64_t count, double sample, std::uint64_t total_words) {
  if (sample <= 0.0) return 1.0;
  const double z = static_cast<double>(count) / (sample * static_cast<double>(total_words));
  return std::min(1.0, (std::sqrt(z) + 1.0) / z);
}

void VocabularyBuilder::add(std::string_view token) {
  ++tokens_seen_;
  auto it = counts_.find(token);
  if (it == counts_.end()) {
    counts_.emplace(std::string(token), 1);
  } else {
    ++it->second;
  }
}

Vocabulary VocabularyBuilder::build(std::uint64_t min_count) const {
  return Vocabulary::from_counts(counts_, min_count);
}

TokenStream::TokenStream(std::istream& in, std::uint64_t limit, std::uint64_t base_offset)
    : in_(in), limit_(limit), base_offset_(base_offset), buffer_(kReadChunk) {}

bool TokenStream::fill() {
  if (eof_) return false;
  const std::uint64_t budget = limit_ - consumed_;
  const std::size_t want = static_cast<std::size_t>(std::min<std::uint64_t>(buffer_.size(), budget));
  if (want == 0) {
    eof_ = true;
    return false;
  }
  in_.read(buffer_.data(), static_cast<std::streamsize>(want));
  len_ = static_cast<std::size_t>(in_.gcount());
  pos_ = 0;
  if (in_.bad()) throw IoError("read error", offset());
  if (len_ == 0) {
    eof_ = true;
    return false;
  }
  return true;
}

TokenStream::Kind TokenStream::next(std::string& token) {
  token.clear();
  while (true) {
    if (pos_ == len_ && !fill()) {
      return token.empty() ? Kind::end_of_stream : Kind::word;
    }
    const char c = buffer_[pos_];
    if (c == '\n') {
      if (!token.empty()) return Kind::word;  // newline is consumed on the next call
      ++pos_;
      ++consumed_;
      return Kind::end_of_line;
    }
    if (is_space(c)) {
      ++pos_;
      ++consumed_;
      if (!token.empty()) return Kind::word;
      continue;
    }
    // Fast path: copy the rest of the token that sits in the buffer.
    std::size_t end = pos_;
    while (end < len_ && buffer_[end] != '\n' && !is_space(buffer_[end])) ++end;
    token.append(buffer_.data() + pos_, end - pos_);
    consumed_ += end - pos_;
    pos_ = end;
  }
}

Vocabulary build_vocab(std::istream& in, std::uint64_t min_count) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  VocabularyBuilder builder;
  TokenStream tokens(in);
  std::string token;
  for (auto kind = tokens.next(token); kind != TokenStream::Kind::end_of_stream; kind = tokens.next(token)) {
    if (kind == TokenStream::Kind::word) builder.add(token);
  }
  return builder.build(min_count);
}

Vocabulary build_vocab(const std::filesystem::path& path, std::uint64_t min_count, std::uint64_t byte_limit) {
  auto ranges = partition_lines(path, 1, byte_limit);
  auto in = open_binary(path);
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  VocabularyBuilder builder;
  TokenStream tokens(in, ranges.front().size());
  std::string token;
  for (auto kind = tokens.next(token); kind != TokenStream::Kind::end_of_stream; kind = tokens.next(token)) {
    if (kind == TokenStream::Kind::word) builder.add(token);
  }
  return builder.build(min_count);
}

std::uint64_t file_size(const std::filesystem::path& path) {
  std::error_code ec;
  auto size = std::filesystem::file_size(path, ec);
  if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message(), 0);
  return size;
}

namespace {

/// Moves `pos` forward to just past the next newline (or to `size`).
std::uint64_t snap_to_line(std::ifstream& in, const std::filesystem::path& path, std::uint64_t pos,
                           std::uint64_t size) {
  if (pos == 0 || pos >= size) return std::min(pos, size);
  in.clear();
  in.seekg(static_cast<std::streamoff>(pos - 1));
  char c;
  std::uint64_t p = pos - 1;
  while (in.get(c)) {
    ++p;
    if (c == '\n') return p;
  }
  if (in.bad()) throw IoError("read error in " + path.string(), p);
  return size;
}

std::vector<ByteRange> split_range(std::ifstream& in, const std::filesystem::path& path, ByteRange range,
                                   std::size_t parts, std::uint64_t size) {
  if (parts == 0) throw ConfigError("cannot partition into zero ranges");
  std::vector<std::uint64_t> cuts(parts + 1);
  cuts[0] = range.begin;
  for (std::size_t i = 1; i < parts; ++i) {
    const std::uint64_t guess = range.begin + range.size() / parts * i;
    cuts[i] = std::max(cuts[i - 1], std::min(range.end, snap_to_line(in, path, guess, size)));
  }
  cuts[parts] = range.end;
  std::vector<ByteRange> ranges(parts);
  for (std::size_t i = 0; i < parts; ++i) ranges[i] = {cuts[i], cuts[i + 1]};
  return ranges;
}

}  // namespace

std::vector<ByteRange> partition_lines(const std::filesystem::path& path, std::size_t parts, std::uint64_t limit) {
  const std::uint64_t size = w2v::file_size(path);
  auto in = open_binary(path);
  const std::uint64_t end = snap_to_line(in, path, std::min(limit, size), size);
  return split_range(in, path, {0, end}, parts, size);
}

std::vector<ByteRange> partition_range(const std::filesystem::path& path, ByteRange range, std::size_t parts) {
  const std::uint64_t size = w2v::file_size(path);
  if (range.end > size || range.begin > range.end) throw ConfigError("byte range outside " + path.string());
  auto in = open_binary(path);
  return split_range(in, path, range, parts, size);
}

SentenceReader::SentenceReader(const std::filesystem::path& path, ByteRange range, const Vocabulary& vocab,
                               std::size_t max_sentence_length)
    : owned_(std::make_unique<std::ifstream>(open_binary(path))),
      in_(owned_.get()),
      range_(range),
      vocab_(&vocab),
      cap_(max_sentence_length) {
  if (cap_ == 0) throw ConfigError("max sentence length must be positive");
  rewind();
}

SentenceReader::SentenceReader(std::istream& in, const Vocabulary& vocab, std::size_t max_sentence_length)
    : in_(&in),
      range_{0, std::numeric_limits<std::uint64_t>::max()},
      vocab_(&vocab),
      cap_(max_sentence_length),
      tokens_(std::make_unique<TokenStream>(in)) {
  if (cap_ == 0) throw ConfigError("max sentence length must be positive");
}

void SentenceReader::rewind() {
  if (!owned_) throw ConfigError("only file-backed sentence readers can rewind");
  in_->clear();
  in_->seekg(static_cast<std::streamoff>(range_.begin));
  if (!*in_) throw IoError("seek failed", range_.begin);
  tokens_ = std::make_unique<TokenStream>(*in_, range_.size(), range_.begin);
}

bool SentenceReader::next(std::vector<WordId>& sentence) {
  sentence.clear();
  while (true) {
    const auto kind = tokens_->next(token_);
    if (kind == TokenStream::Kind::end_of_stream) return !sentence.empty();
    if (kind == TokenStream::Kind::end_of_line) {
      if (!sentence.empty()) return true;
      continue;
    }
    if (auto id = vocab_->find(token_)) {
      sentence.push_back(*id);
      if (sentence.size() == cap_) return true;
    }
  }
}

std::vector<std::vector<WordId>> iter_sentences(std::istream& in, const Vocabulary& vocab,
                                                std::size_t max_sentence_length) {
  SentenceReader reader(in, vocab, max_sentence_length);
  std::vector<std::vector<WordId>> out;
  std::vector<WordId> sentence;
  while (reader.next(sentence)) out.push_back(sentence);
  return out;
}

}  // namespace w2v
