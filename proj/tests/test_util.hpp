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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

namespace w2v::testing {

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            fmt::format("w2v-test-{}-{}", static_cast<long>(::getpid()), counter++);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Text with planted co-occurrence structure: `topics` groups of
/// `words_per_topic` words ("t<k>w<i>"); each sentence draws most of its words
/// from one topic plus a few shared filler words ("f<i>"), with Zipf-like
/// frequencies inside a topic.
struct TopicCorpusSpec {
  int topics = 8;
  int words_per_topic = 12;
  int fillers = 20;
  int sentences = 4000;
  int min_length = 8;
  int max_length = 16;
  double filler_rate = 0.25;
  std::uint64_t seed = 7;
};

inline std::string topic_word(int topic, int word) { return fmt::format("t{}w{}", topic, word); }

inline std::string make_topic_corpus(const TopicCorpusSpec& spec) {
  std::mt19937_64 gen(spec.seed);
  std::vector<double> weights;
  for (int i = 0; i < spec.words_per_topic; ++i) weights.push_back(1.0 / (1.0 + 0.3 * i));
  std::discrete_distribution<int> pick_word(weights.begin(), weights.end());
  std::uniform_int_distribution<int> pick_topic(0, spec.topics - 1);
  std::uniform_int_distribution<int> pick_length(spec.min_length, spec.max_length);
  std::uniform_int_distribution<int> pick_filler(0, spec.fillers - 1);
  std::bernoulli_distribution is_filler(spec.filler_rate);
  std::string text;
  for (int s = 0; s < spec.sentences; ++s) {
    const int topic = pick_topic(gen);
    const int length = pick_length(gen);
    for (int i = 0; i < length; ++i) {
      if (i) text += ' ';
      text += is_filler(gen) ? fmt::format("f{}", pick_filler(gen)) : topic_word(topic, pick_word(gen));
    }
    text += '\n';
  }
  return text;
}

/// Word pairs with a human-like score: 9 within a topic, 1 across topics.
inline std::string make_topic_similarity(const TopicCorpusSpec& spec, int pairs, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> topic(0, spec.topics - 1);
  std::uniform_int_distribution<int> word(0, spec.words_per_topic - 1);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  std::string text = "# word1\tword2\tscore\n";
  for (int p = 0; p < pairs; ++p) {
    const int ta = topic(gen);
    const bool same = p % 2 == 0;
    int tb = same ? ta : topic(gen);
    if (!same && tb == ta) tb = (ta + 1) % spec.topics;
    int wa = word(gen), wb = word(gen);
    if (same && wa == wb) wb = (wa + 1) % spec.words_per_topic;
    text += fmt::format("{}\t{}\t{:.2f}\n", topic_word(ta, wa), topic_word(tb, wb), (same ? 9.0 : 1.0) + jitter(gen));
  }
  return text;
}

}  // namespace w2v::testing
