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

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "w2v/config.hpp"
#include "w2v/model.hpp"
#include "w2v/sampling.hpp"
#include "w2v/trainer.hpp"

namespace w2v {

/// One target word and the context words that predict it.
struct WindowTask {
  WordId target = 0;
  std::vector<WordId> inputs;
};

/// The baseline skip-gram step, one input word at a time. For each input the
/// target (label 1) and then `negatives` draws from `next_negative` (label 0)
/// are scored with a dot product; the input-side gradient accumulates in
/// `temp` from the pre-update output row, the output row is updated right
/// away, and the input row is updated after all K+1 rounds.
///
/// `temp` must hold model.dim() elements.
template <class Real, class NegativeSource>
UpdateStats train_window_hogwild(BasicEmbeddingModel<Real>& model, WordId target, std::span<const WordId> inputs,
                                 int negatives, Real alpha, NegativeSource&& next_negative, std::span<Real> temp,
                                 SigmoidMode mode = SigmoidMode::exact) {
  const std::size_t dim = model.dim();
  UpdateStats stats;
  for (const WordId input : inputs) {
    Real* in_row = model.in.row(input).data();
    std::fill(temp.begin(), temp.end(), Real(0));
    for (int k = 0; k < negatives + 1; ++k) {
      WordId chosen;
      Real label;
      if (k == 0) {
        chosen = target;
        label = Real(1);
      } else {
        chosen = next_negative();
        label = Real(0);
      }
      Real* out_row = model.out.row(chosen).data();
      Real inn = 0;
      for (std::size_t j = 0; j < dim; ++j) inn += in_row[j] * out_row[j];
      const Real err = sgns_error(inn, label, mode);
      for (std::size_t j = 0; j < dim; ++j) temp[j] += err * out_row[j];
      const Real step = alpha * err;
      for (std::size_t j = 0; j < dim; ++j) out_row[j] += step * in_row[j];
    }
    for (std::size_t j = 0; j < dim; ++j) in_row[j] += alpha * temp[j];
    stats.dot_products += static_cast<std::uint64_t>(negatives) + 1;
    stats.row_writes += static_cast<std::uint64_t>(negatives) + 2;
  }
  return stats;
}

/// Same step with negatives drawn from the unigram table. Negatives equal to
/// the target are redrawn unless `allow_target_negative`.
template <class Real>
UpdateStats train_window_hogwild(BasicEmbeddingModel<Real>& model, const WindowTask& task, int negatives, Real alpha,
                                 const UnigramTable& table, Rng& rng, std::span<Real> temp,
                                 SigmoidMode mode = SigmoidMode::exact, bool allow_target_negative = false) {
  auto draw = [&] { return allow_target_negative ? sample_any(table, rng) : sample_negative(table, rng, task.target); };
  return train_window_hogwild(model, task.target, std::span<const WordId>(task.inputs), negatives, alpha, draw, temp,
                              mode);
}

/// Per-thread sentence trainer for the baseline scheme.
template <class Real>
class HogwildKernel {
 public:
  HogwildKernel(const TrainingConfig& config)
      : negatives_(config.negative),
        window_(config.window),
        mode_(config.sigmoid_mode),
        allow_target_negative_(config.allow_target_negative),
        temp_(config.dim) {}

  void train_sentence(BasicEmbeddingModel<Real>& model, std::span<const WordId> sentence, Real alpha,
                      const UnigramTable& table, Rng& rng, UpdateStats& stats) {
    const std::size_t n = sentence.size();
    for (std::size_t pos = 0; pos < n; ++pos) {
      const auto b = static_cast<std::size_t>(dynamic_window(window_, rng));
      task_.target = sentence[pos];
      task_.inputs.clear();
      const std::size_t lo = pos >= b ? pos - b : 0;
      const std::size_t hi = std::min(n - 1, pos + b);
      for (std::size_t c = lo; c <= hi; ++c) {
        if (c != pos) task_.inputs.push_back(sentence[c]);
      }
      if (task_.inputs.empty()) continue;
      stats += train_window_hogwild(model, task_, negatives_, alpha, table, rng, std::span<Real>(temp_), mode_,
                                    allow_target_negative_);
    }
  }

 private:
  int negatives_;
  int window_;
  SigmoidMode mode_;
  bool allow_target_negative_;
  std::vector<Real> temp_;
  WindowTask task_;
};

/// Trains `model` with the baseline scheme: config.threads threads over
/// newline-aligned byte ranges of `corpus`, sharing the model lock-free.
template <class Real>
TrainingReport run_hogwild(BasicEmbeddingModel<Real>& model, const Vocabulary& vocab, const UnigramTable& table,
                           const std::filesystem::path& corpus, const TrainingConfig& config) {
  return detail::run_parallel(model, vocab, table, corpus, config, TrainerKind::hogwild,
                              [&] { return HogwildKernel<Real>(config); });
}

}  // namespace w2v
