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
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>
#include <string>
#include <vector>

#include "w2v/config.hpp"
#include "w2v/error.hpp"
#include "w2v/corpus.hpp"
#include "w2v/model.hpp"
#include "w2v/sampling.hpp"

namespace w2v {

/// Read-only state shared by every thread of one training run, plus the
/// relaxed word counter that drives the learning-rate schedule.
struct SharedTrainingState {
  const Vocabulary* vocab = nullptr;
  const UnigramTable* table = nullptr;
  const TrainingConfig* config = nullptr;
  std::vector<double> keep;  // subsampling keep probability per word
  LearningRate lr;
  std::atomic<std::uint64_t> words_done{0};

  SharedTrainingState(const Vocabulary& v, const UnigramTable& t, const TrainingConfig& c,
                      std::uint64_t words_total)
      : vocab(&v), table(&t), config(&c), keep(v.keep_probabilities(c.sample)) {
    lr.alpha0 = c.alpha0;
    lr.words_total = words_total;
  }
};

/// Drops frequent words: word w survives with probability keep[w]. Draws one
/// random number per word whenever subsampling is enabled.
void subsample(std::span<const WordId> sentence, std::span<const double> keep, bool enabled, Rng& rng,
               std::vector<WordId>& out);

/// One thread's pass over its byte range, repeated for the configured number
/// of epochs. `Kernel` trains one (already subsampled) sentence at a time:
///   void train_sentence(BasicEmbeddingModel<Real>&, std::span<const WordId>, Real alpha,
///                       const UnigramTable&, Rng&, UpdateStats&);
template <class Real, class Kernel>
class SentenceLoop {
 public:
  SentenceLoop(const std::filesystem::path& corpus, ByteRange range, SharedTrainingState& shared,
               std::uint64_t seed, Kernel kernel)
      : reader_(corpus, range, *shared.vocab, shared.config->max_sentence_length),
        shared_(&shared),
        rng_(seed),
        kernel_(std::move(kernel)),
        alpha_(shared.lr.alpha0) {}

  /// Trains whole sentences until at least `word_budget` words were read in
  /// this call, an epoch ends (if `stop_at_epoch_end`), or every epoch is
  /// done. Returns false once finished.
  bool run(BasicEmbeddingModel<Real>& model, std::uint64_t word_budget = std::numeric_limits<std::uint64_t>::max(),
           bool stop_at_epoch_end = false) {
    const auto& cfg = *shared_->config;
    std::uint64_t read_this_call = 0;
    while (epoch_ < cfg.iterations) {
      if (read_this_call >= word_budget) return true;
      if (!reader_.next(raw_)) {
        flush_word_count();
        ++epoch_;
        if (epoch_ < cfg.iterations) reader_.rewind();
        if (stop_at_epoch_end) return epoch_ < cfg.iterations;
        continue;
      }
      if (pending_words_ > kAlphaUpdateInterval) {
        flush_word_count();
        alpha_ = shared_->lr.at(shared_->words_done.load(std::memory_order_relaxed));
      }
      words_read_ += raw_.size();
      read_this_call += raw_.size();
      pending_words_ += raw_.size();
      subsample(raw_, shared_->keep, cfg.sample > 0, rng_, sentence_);
      kernel_.train_sentence(model, std::span<const WordId>(sentence_), static_cast<Real>(alpha_),
                             *shared_->table, rng_, stats_);
    }
    return false;
  }

  std::uint64_t words_read() const noexcept { return words_read_; }
  const UpdateStats& stats() const noexcept { return stats_; }
  double alpha() const noexcept { return alpha_; }
  bool finished() const noexcept { return epoch_ >= shared_->config->iterations; }

 private:
  void flush_word_count() {
    shared_->words_done.fetch_add(pending_words_, std::memory_order_relaxed);
    pending_words_ = 0;
  }

  SentenceReader reader_;
  SharedTrainingState* shared_;
  Rng rng_;
  Kernel kernel_;
  double alpha_;
  int epoch_ = 0;
  std::uint64_t words_read_ = 0;
  std::uint64_t pending_words_ = 0;
  UpdateStats stats_;
  std::vector<WordId> raw_;
  std::vector<WordId> sentence_;
};

/// A trainer stopped early (typically on an I/O error); carries what was done.
class TrainingAborted : public Error {
 public:
  TrainingAborted(const std::string& what, TrainingReport partial) : Error(what), partial_(std::move(partial)) {}
  const TrainingReport& partial_report() const noexcept { return partial_; }

 private:
  TrainingReport partial_;
};

namespace detail {

[[noreturn]] inline void rethrow_as_aborted(std::exception_ptr failure, const TrainingReport& partial) {
  try {
    std::rethrow_exception(failure);
  } catch (const std::exception& e) {
    throw TrainingAborted(std::string("training aborted: ") + e.what(), partial);
  }
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline void finish_report(TrainingReport& report, double seconds) {
  report.wall_seconds = seconds;
  report.words_per_sec = seconds > 0 ? static_cast<double>(report.words_processed) / seconds : 0.0;
}

/// Hogwild driver: thread t trains range t with seed + t; all threads update
/// `model` without synchronization.
template <class Real, class MakeKernel>
TrainingReport run_parallel(BasicEmbeddingModel<Real>& model, const Vocabulary& vocab, const UnigramTable& table,
                            const std::filesystem::path& corpus, const TrainingConfig& config, TrainerKind kind,
                            MakeKernel make_kernel) {
  config.validate();
  if (model.vocab_size() != vocab.size() || model.dim() != config.dim) {
    throw ConfigError("model shape does not match vocabulary and config");
  }
  const auto threads = static_cast<std::size_t>(config.threads);
  const auto ranges = partition_lines(corpus, threads, config.byte_limit);
  SharedTrainingState shared(vocab, table, config,
                             static_cast<std::uint64_t>(config.iterations) * vocab.total_words());

  using Loop = SentenceLoop<Real, decltype(make_kernel())>;
  std::vector<std::unique_ptr<Loop>> loops;
  for (std::size_t t = 0; t < threads; ++t) {
    loops.push_back(std::make_unique<Loop>(corpus, ranges[t], shared, config.seed + t, make_kernel()));
  }

  const auto start = std::chrono::steady_clock::now();
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          loops[t]->run(model);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  TrainingReport report;
  report.trainer = kind;
  report.threads = config.threads;
  report.epochs = config.iterations;
  for (const auto& loop : loops) {
    report.words_processed += loop->words_read();
    report.updates += loop->stats();
    report.final_alpha = report.final_alpha == 0 ? loop->alpha() : std::min(report.final_alpha, loop->alpha());
  }
  finish_report(report, seconds_since(start));
  if (failure) rethrow_as_aborted(failure, report);
  return report;
}

}  // namespace detail

}  // namespace w2v
