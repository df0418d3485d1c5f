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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "w2v/config.hpp"
#include "w2v/gemm.hpp"
#include "w2v/model.hpp"
#include "w2v/sampling.hpp"
#include "w2v/trainer.hpp"

namespace w2v {

/// Input rows and output rows of one batched step. A single-window batch has
/// N context words against 1 target + K shared negatives (labels 1, 0, .., 0).
/// A multi-window batch stacks several such windows; `input_window` and
/// `output_window` record which window each row belongs to, and rows only
/// interact with output columns of their own window.
struct Minibatch {
  std::vector<WordId> input_ids;
  std::vector<WordId> output_ids;
  std::vector<std::uint8_t> labels;
  std::vector<std::uint32_t> input_window;
  std::vector<std::uint32_t> output_window;
  std::uint32_t windows = 0;

  void clear() {
    input_ids.clear();
    output_ids.clear();
    labels.clear();
    input_window.clear();
    output_window.clear();
    windows = 0;
  }
  bool empty() const noexcept { return input_ids.empty(); }
  /// Row writes a batched step performs: one per input row plus one per output row.
  std::uint64_t row_writes() const noexcept { return input_ids.size() + output_ids.size(); }
};

/// Appends the window centred at `position` (half-width `half_window`): its
/// context words as inputs, sentence[position] as target, and `negatives`
/// draws shared by all of those inputs. Returns false, drawing nothing, when
/// the window has no context word.
bool append_window(Minibatch& batch, std::span<const WordId> sentence, std::size_t position, int half_window,
                   int negatives, const UnigramTable& table, Rng& rng, bool exclude_target = true);

/// A fresh single-window batch, or nullopt when no context survives.
std::optional<Minibatch> build_minibatch(std::span<const WordId> sentence, std::size_t position, int half_window,
                                         int negatives, const UnigramTable& table, Rng& rng,
                                         bool exclude_target = true);

/// Thread-private buffers for one batched step. `a` and `b` are value copies
/// of the model rows taken before any write of the batch.
template <class Real>
struct BatchWorkspace {
  Matrix<Real> a;         // N x D gather of input rows
  Matrix<Real> b;         // (K+1) x D gather of output rows
  Matrix<Real> scores;    // N x (K+1), a * b^T
  Matrix<Real> errors;    // N x (K+1), label - sigmoid(score)
  Matrix<Real> grad_in;   // N x D, alpha * errors * b
  Matrix<Real> grad_out;  // (K+1) x D, alpha * errors^T * a
  Matrix<Real> bt;        // D x (K+1) scratch
};

template <class Real>
void gather(const BasicEmbeddingModel<Real>& model, const Minibatch& batch, BatchWorkspace<Real>& ws) {
  const std::size_t dim = model.dim();
  ws.a.reshape(batch.input_ids.size(), dim);
  for (std::size_t i = 0; i < batch.input_ids.size(); ++i) {
    std::ranges::copy(model.in.row(batch.input_ids[i]), ws.a.row(i).begin());
  }
  ws.b.reshape(batch.output_ids.size(), dim);
  for (std::size_t j = 0; j < batch.output_ids.size(); ++j) {
    std::ranges::copy(model.out.row(batch.output_ids[j]), ws.b.row(j).begin());
  }
}

/// scores = a * b^T.
template <class Real>
const Matrix<Real>& forward_scores(BatchWorkspace<Real>& ws) {
  gemm::abt(ws.a, ws.b, ws.scores, ws.bt);
  return ws.scores;
}

/// errors[i][j] = label[j] - sigmoid(scores[i][j]) within a window, 0 across windows.
template <class Real>
const Matrix<Real>& compute_errors(const Minibatch& batch, BatchWorkspace<Real>& ws,
                                   SigmoidMode mode = SigmoidMode::exact) {
  const std::size_t rows = ws.scores.rows(), cols = ws.scores.cols();
  ws.errors.reshape(rows, cols);
  const bool single = batch.windows <= 1;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (single || batch.input_window[i] == batch.output_window[j]) {
        ws.errors(i, j) = sgns_error(ws.scores(i, j), static_cast<Real>(batch.labels[j]), mode);
      } else {
        ws.errors(i, j) = Real(0);
      }
    }
  }
  return ws.errors;
}

/// grad_in = alpha * errors * b and grad_out = alpha * errors^T * a, both from
/// the snapshots, then scatter-added into the model: every occurrence of a
/// word id adds its own gradient row, in row order. Returns the number of row
/// writes, N + (K+1).
template <class Real>
std::uint64_t apply_updates(BasicEmbeddingModel<Real>& model, const Minibatch& batch, BatchWorkspace<Real>& ws,
                            Real alpha) {
  gemm::scaled_ab(alpha, ws.errors, ws.b, ws.grad_in);
  gemm::scaled_atb(alpha, ws.errors, ws.a, ws.grad_out);
  const std::size_t dim = model.dim();
  for (std::size_t i = 0; i < batch.input_ids.size(); ++i) {
    Real* __restrict dst = model.in.row(batch.input_ids[i]).data();
    const Real* __restrict g = ws.grad_in.row(i).data();
    for (std::size_t d = 0; d < dim; ++d) dst[d] += g[d];
  }
  for (std::size_t j = 0; j < batch.output_ids.size(); ++j) {
    Real* __restrict dst = model.out.row(batch.output_ids[j]).data();
    const Real* __restrict g = ws.grad_out.row(j).data();
    for (std::size_t d = 0; d < dim; ++d) dst[d] += g[d];
  }
  return batch.row_writes();
}

/// gather -> forward_scores -> compute_errors -> apply_updates.
template <class Real>
UpdateStats train_batch(BasicEmbeddingModel<Real>& model, const Minibatch& batch, BatchWorkspace<Real>& ws,
                        Real alpha, SigmoidMode mode = SigmoidMode::exact) {
  UpdateStats stats;
  if (batch.empty()) return stats;
  gather(model, batch, ws);
  forward_scores(ws);
  compute_errors(batch, ws, mode);
  stats.row_writes = apply_updates(model, batch, ws, alpha);
  stats.dot_products = static_cast<std::uint64_t>(batch.input_ids.size()) * batch.output_ids.size();
  stats.gemm_calls = 3;
  return stats;
}

/// Per-thread sentence trainer for the batched scheme: `batch_windows`
/// consecutive positions form one batch.
template <class Real>
class HogbatchKernel {
 public:
  HogbatchKernel(const TrainingConfig& config)
      : negatives_(config.negative),
        window_(config.window),
        batch_windows_(static_cast<std::uint32_t>(config.batch_windows)),
        mode_(config.sigmoid_mode),
        exclude_target_(!config.allow_target_negative) {}

  void train_sentence(BasicEmbeddingModel<Real>& model, std::span<const WordId> sentence, Real alpha,
                      const UnigramTable& table, Rng& rng, UpdateStats& stats) {
    batch_.clear();
    for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
      const int b = dynamic_window(window_, rng);
      append_window(batch_, sentence, pos, b, negatives_, table, rng, exclude_target_);
      if (batch_.windows >= batch_windows_) {
        stats += train_batch(model, batch_, ws_, alpha, mode_);
        batch_.clear();
      }
    }
    stats += train_batch(model, batch_, ws_, alpha, mode_);
    batch_.clear();
  }

 private:
  int negatives_;
  int window_;
  std::uint32_t batch_windows_;
  SigmoidMode mode_;
  bool exclude_target_;
  Minibatch batch_;
  BatchWorkspace<Real> ws_;
};

/// Trains `model` with the batched scheme. Same traversal and random stream
/// layout as run_hogwild; each thread runs its own small GEMMs and writes back
/// to the shared model without locks.
template <class Real>
TrainingReport run_hogbatch(BasicEmbeddingModel<Real>& model, const Vocabulary& vocab, const UnigramTable& table,
                            const std::filesystem::path& corpus, const TrainingConfig& config) {
  return detail::run_parallel(model, vocab, table, corpus, config, TrainerKind::hogbatch,
                              [&] { return HogbatchKernel<Real>(config); });
}

}  // namespace w2v
