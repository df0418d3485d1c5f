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
#include <barrier>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "w2v/config.hpp"
#include "w2v/corpus.hpp"
#include "w2v/hogbatch.hpp"
#include "w2v/hogwild.hpp"
#include "w2v/model.hpp"
#include "w2v/trainer.hpp"

namespace w2v {

/// When workers average their replicas: after every `period_words` words
/// read per worker, once per epoch (kSyncPerEpoch), or only at the end (kSyncNever).
struct SyncPolicy {
  std::uint64_t period_words = kSyncPerEpoch;
};

/// Replaces every element of every replica by the arithmetic mean over
/// replicas. Each mean is summed in ascending value order in extended
/// precision, so the result does not depend on the order of the replicas.
template <class Real>
void synchronize(std::span<BasicEmbeddingModel<Real>> replicas) {
  if (replicas.size() <= 1) return;
  const auto& first = replicas.front();
  for (const auto& r : replicas) {
    if (r.in.rows() != first.in.rows() || r.in.cols() != first.in.cols() || r.out.rows() != first.out.rows() ||
        r.out.cols() != first.out.cols()) {
      throw ConfigError("cannot synchronize replicas of different shapes");
    }
  }
  using Acc = std::conditional_t<std::is_same_v<Real, float>, double, long double>;
  const Acc count = static_cast<Acc>(replicas.size());
  std::vector<Real> values(replicas.size());
  auto reduce = [&](auto member) {
    const std::size_t n = (first.*member).data().size();
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t w = 0; w < replicas.size(); ++w) values[w] = (replicas[w].*member).data()[e];
      std::sort(values.begin(), values.end());
      Acc sum = 0;
      for (Real v : values) sum += v;
      const Real mean = static_cast<Real>(sum / count);
      for (auto& r : replicas) (r.*member).data()[e] = mean;
    }
  };
  reduce(&BasicEmbeddingModel<Real>::in);
  reduce(&BasicEmbeddingModel<Real>::out);
}

template <class Real>
struct DistributedResult {
  BasicEmbeddingModel<Real> model;
  std::vector<TrainingReport> workers;
  std::vector<ByteRange> shards;
  std::vector<SyncRound> rounds;
  TrainingReport combined;
};

/// Data-parallel training simulated in one process: `workers` replicas of
/// `initial`, each trained by the configured trainer (config.threads threads)
/// over its own newline-aligned shard, averaged at a barrier according to
/// `sync` and once more at the end. Worker w, thread t uses seed
/// config.seed + w * threads + t; each worker decays its learning rate over
/// its share (1 / workers) of the total word count.
template <class Real>
DistributedResult<Real> run_distributed(const BasicEmbeddingModel<Real>& initial, const Vocabulary& vocab,
                                        const UnigramTable& table, const std::filesystem::path& corpus,
                                        const TrainingConfig& config, int workers, SyncPolicy sync) {
  config.validate();
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (initial.vocab_size() != vocab.size() || initial.dim() != config.dim) {
    throw ConfigError("model shape does not match vocabulary and config");
  }
  const auto W = static_cast<std::size_t>(workers);
  const auto T = static_cast<std::size_t>(config.threads);

  DistributedResult<Real> result;
  result.shards = partition_lines(corpus, W, config.byte_limit);

  std::vector<BasicEmbeddingModel<Real>> replicas(W, initial);
  const std::uint64_t words_total = static_cast<std::uint64_t>(config.iterations) * vocab.total_words() / W;
  std::vector<std::unique_ptr<SharedTrainingState>> shared;
  for (std::size_t w = 0; w < W; ++w) {
    shared.push_back(std::make_unique<SharedTrainingState>(vocab, table, config, words_total));
  }

  using HogwildLoop = SentenceLoop<Real, HogwildKernel<Real>>;
  using HogbatchLoop = SentenceLoop<Real, HogbatchKernel<Real>>;
  using Loop = std::variant<std::unique_ptr<HogwildLoop>, std::unique_ptr<HogbatchLoop>>;
  std::vector<Loop> loops;
  for (std::size_t w = 0; w < W; ++w) {
    const auto ranges = partition_range(corpus, result.shards[w], T);
    for (std::size_t t = 0; t < T; ++t) {
      const std::uint64_t seed = config.seed + w * T + t;
      if (config.trainer == TrainerKind::hogwild) {
        loops.emplace_back(std::make_unique<HogwildLoop>(corpus, ranges[t], *shared[w], seed, HogwildKernel<Real>(config)));
      } else {
        loops.emplace_back(
            std::make_unique<HogbatchLoop>(corpus, ranges[t], *shared[w], seed, HogbatchKernel<Real>(config)));
      }
    }
  }
  auto words_read = [&](const Loop& l) { return std::visit([](const auto& p) { return p->words_read(); }, l); };

  const bool per_epoch = sync.period_words == kSyncPerEpoch;
  const std::uint64_t budget = per_epoch || sync.period_words == kSyncNever
                                   ? std::numeric_limits<std::uint64_t>::max()
                                   : (sync.period_words + T - 1) / T;

  const auto start = std::chrono::steady_clock::now();
  std::vector<char> more(W * T, 1);
  std::atomic<bool> all_done{false};
  auto on_barrier = [&]() noexcept {
    synchronize(std::span<BasicEmbeddingModel<Real>>(replicas));
    SyncRound round;
    round.seconds = detail::seconds_since(start);
    for (const auto& l : loops) round.words_processed += words_read(l);
    result.rounds.push_back(round);
    all_done.store(std::none_of(more.begin(), more.end(), [](char m) { return m != 0; }));
  };
  std::barrier barrier(static_cast<std::ptrdiff_t>(W * T), on_barrier);

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < W; ++w) {
      for (std::size_t t = 0; t < T; ++t) {
        const std::size_t idx = w * T + t;
        threads.emplace_back([&, w, idx] {
          try {
            while (true) {
              more[idx] = std::visit([&](auto& p) { return p->run(replicas[w], budget, per_epoch); }, loops[idx]);
              barrier.arrive_and_wait();
              if (all_done.load()) break;
            }
          } catch (...) {
            {
              std::lock_guard lock(failure_mutex);
              if (!failure) failure = std::current_exception();
            }
            more[idx] = 0;
            barrier.arrive_and_drop();
          }
        });
      }
    }
  }

  result.model = std::move(replicas.front());
  result.combined.trainer = config.trainer;
  result.combined.threads = static_cast<int>(W * T);
  result.combined.epochs = config.iterations;
  for (std::size_t w = 0; w < W; ++w) {
    TrainingReport report;
    report.trainer = config.trainer;
    report.threads = config.threads;
    report.epochs = config.iterations;
    for (std::size_t t = 0; t < T; ++t) {
      std::visit(
          [&](const auto& p) {
            report.words_processed += p->words_read();
            report.updates += p->stats();
            report.final_alpha = report.final_alpha == 0 ? p->alpha() : std::min(report.final_alpha, p->alpha());
          },
          loops[w * T + t]);
    }
    detail::finish_report(report, detail::seconds_since(start));
    result.combined.words_processed += report.words_processed;
    result.combined.updates += report.updates;
    result.combined.final_alpha =
        result.combined.final_alpha == 0 ? report.final_alpha : std::min(result.combined.final_alpha, report.final_alpha);
    result.workers.push_back(report);
  }
  detail::finish_report(result.combined, detail::seconds_since(start));
  if (failure) detail::rethrow_as_aborted(failure, result.combined);
  return result;
}

}  // namespace w2v
