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

#include "w2v/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <cblas.h>

#include "w2v/error.hpp"

namespace w2v {

namespace {

constexpr std::size_t kQuestionBlock = 256;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_any(std::string_view line, std::string_view separators) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && separators.find(line[i]) != std::string_view::npos) ++i;
    std::size_t j = i;
    while (j < line.size() && separators.find(line[j]) == std::string_view::npos) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size()) throw Error("cosine of vectors with different dimensions");
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    nu += static_cast<double>(u[i]) * u[i];
    nv += static_cast<double>(v[i]) * v[i];
  }
  if (nu == 0 || nv == 0) throw Error("cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> model_scores, std::span<const double> human_scores) {
  if (model_scores.size() != human_scores.size()) throw Error("spearman: score lists differ in length");
  if (model_scores.size() < 2) throw Error("spearman: need at least two usable pairs");
  const auto rx = average_ranks(model_scores);
  const auto ry = average_ranks(human_scores);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<SimilarityPair> load_similarity(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string(), 0);
  std::vector<SimilarityPair> pairs;
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    const std::uint64_t line_start = offset;
    offset += line.size() + 1;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = split_any(body, "\t, ");
    if (fields.size() < 3) throw FormatError("similarity line needs 'word1 word2 score': '" + line + "'", line_start);
    SimilarityPair p{fields[0], fields[1], 0.0};
    const auto& score = fields[2];
    auto [ptr, ec] = std::from_chars(score.data(), score.data() + score.size(), p.human_score);
    if (ec != std::errc() || ptr != score.data() + score.size()) {
      if (pairs.empty()) continue;  // header row
      throw FormatError("bad similarity score '" + score + "'", line_start);
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

std::vector<AnalogyQuestion> load_analogy(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string(), 0);
  std::vector<AnalogyQuestion> questions;
  std::string section;
  std::string line;
  std::uint64_t offset = 0;
  while (std::getline(in, line)) {
    const std::uint64_t line_start = offset;
    offset += line.size() + 1;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == ':') {
      section = std::string(trim(body.substr(1)));
      continue;
    }
    auto fields = split_any(body, " \t");
    if (fields.size() != 4) throw FormatError("analogy line needs four words: '" + line + "'", line_start);
    questions.push_back({fields[0], fields[1], fields[2], fields[3], section});
  }
  return questions;
}

EmbeddingIndex::EmbeddingIndex(const WordVectors& vectors, bool case_insensitive, std::size_t limit)
    : vectors_(&vectors), case_insensitive_(case_insensitive) {
  const std::size_t rows = std::min(limit, vectors.vectors.rows());
  const std::size_t dim = vectors.vectors.cols();
  unit_ = Matrix<float>(rows, dim);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto src = vectors.vectors.row(r);
    double norm = 0;
    for (float v : src) norm += static_cast<double>(v) * v;
    norm = std::sqrt(norm);
    auto dst = unit_.row(r);
    for (std::size_t d = 0; d < dim; ++d) dst[d] = norm > 0 ? static_cast<float>(src[d] / norm) : 0.0f;
    index_.emplace(fold(vectors.tokens[r]), r);  // keeps the first spelling
  }
}

std::string EmbeddingIndex::fold(std::string_view token) const {
  std::string s(token);
  if (case_insensitive_) {
    for (auto& c : s) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
  }
  return s;
}

std::optional<std::size_t> EmbeddingIndex::find(std::string_view token) const {
  auto it = index_.find(fold(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SimilarityResult evaluate_similarity(const WordVectors& vectors, std::span<const SimilarityPair> pairs,
                                     bool case_insensitive) {
  EmbeddingIndex index(vectors, case_insensitive);
  SimilarityResult result;
  std::vector<double> model_scores, human_scores;
  for (const auto& p : pairs) {
    auto a = index.find(p.word_a);
    auto b = index.find(p.word_b);
    double sim = 0;
    bool usable = a && b;
    if (usable) {
      try {
        sim = cosine(index.raw(*a), index.raw(*b));
      } catch (const Error&) {
        usable = false;
      }
    }
    if (!usable) {
      ++result.pairs_skipped;
      continue;
    }
    ++result.pairs_used;
    model_scores.push_back(sim);
    human_scores.push_back(p.human_score);
  }
  if (model_scores.size() >= 2) result.spearman = spearman(model_scores, human_scores);
  return result;
}

AnalogyResult analogy_accuracy(const WordVectors& vectors, std::span<const AnalogyQuestion> questions,
                               std::size_t top_vocab, bool case_insensitive) {
  EmbeddingIndex index(vectors, case_insensitive, top_vocab);
  const std::size_t rows = index.size();
  const std::size_t dim = index.dim();
  AnalogyResult result;
  result.predictions.assign(questions.size(), std::nullopt);

  struct Usable {
    std::size_t question;
    std::size_t a, b, c, d;
  };
  std::vector<Usable> usable;
  std::vector<bool> is_usable(questions.size(), false);
  for (std::size_t q = 0; q < questions.size(); ++q) {
    const auto& qu = questions[q];
    auto a = index.find(qu.a), b = index.find(qu.b), c = index.find(qu.c), d = index.find(qu.d);
    if (a && b && c && d) {
      usable.push_back({q, *a, *b, *c, *d});
      is_usable[q] = true;
    }
  }

  Matrix<float> targets(kQuestionBlock, dim);
  Matrix<float> scores(kQuestionBlock, std::max<std::size_t>(rows, 1));
  const auto& unit = index.unit_matrix();
  for (std::size_t start = 0; start < usable.size(); start += kQuestionBlock) {
    const std::size_t count = std::min(kQuestionBlock, usable.size() - start);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& u = usable[start + k];
      auto ua = index.unit(u.a), ub = index.unit(u.b), uc = index.unit(u.c);
      auto t = targets.row(k);
      for (std::size_t d = 0; d < dim; ++d) t[d] = ub[d] - ua[d] + uc[d];
    }
    cblas_sgemm(CblasRowMajor, CblasNoTrans, CblasTrans, static_cast<int>(count), static_cast<int>(rows),
                static_cast<int>(dim), 1.0f, targets.data().data(), static_cast<int>(dim), unit.data().data(),
                static_cast<int>(dim), 0.0f, scores.data().data(), static_cast<int>(rows));
    for (std::size_t k = 0; k < count; ++k) {
      const auto& u = usable[start + k];
      const float* s = scores.data().data() + k * rows;
      std::optional<std::size_t> best;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == u.a || r == u.b || r == u.c) continue;
        if (!best || s[r] > s[*best]) best = r;
      }
      result.predictions[u.question] = best;
    }
  }

  auto section_of = [&](const std::string& name) -> SectionScore& {
    for (auto& s : result.sections) {
      if (s.section == name) return s;
    }
    result.sections.push_back({name, 0, 0, 0, std::nullopt});
    return result.sections.back();
  };
  std::size_t next_usable = 0;
  for (std::size_t q = 0; q < questions.size(); ++q) {
    auto& section = section_of(questions[q].section);
    if (!is_usable[q]) {
      ++section.skipped;
      ++result.skipped;
      continue;
    }
    const auto& u = usable[next_usable++];
    ++section.usable;
    ++result.usable;
    if (result.predictions[q] && *result.predictions[q] == u.d) {
      ++section.correct;
      ++result.correct;
    }
  }
  for (auto& s : result.sections) {
    if (s.usable > 0) s.accuracy = static_cast<double>(s.correct) / static_cast<double>(s.usable);
  }
  if (result.usable > 0) result.overall = static_cast<double>(result.correct) / static_cast<double>(result.usable);
  return result;
}

}  // namespace w2v
