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

#include <filesystem>
#include <optional>
#include <vector>

#include "w2v/config.hpp"
#include "w2v/corpus.hpp"
#include "w2v/distsim.hpp"
#include "w2v/hogbatch.hpp"
#include "w2v/hogwild.hpp"
#include "w2v/model.hpp"
#include "w2v/sampling.hpp"

namespace w2v {

template <class Real>
struct TrainingResult {
  Vocabulary vocab;
  BasicEmbeddingModel<Real> model;
  TrainingReport report;
  std::vector<TrainingReport> worker_reports;  // distributed runs only
  std::vector<SyncRound> rounds;               // distributed runs only
};

/// Seed of the model-initialization stream, kept apart from the per-thread streams.
inline std::uint64_t init_seed(std::uint64_t seed) { return seed ^ 0x5DEECE66DULL; }

/// vocabulary -> unigram table -> model -> trainer (distributed when
/// config.workers > 1). Pass `vocab` to skip vocabulary construction.
template <class Real = float>
TrainingResult<Real> train_corpus(const TrainingConfig& config, const std::filesystem::path& corpus,
                                  std::optional<Vocabulary> vocab = std::nullopt) {
  config.validate();
  TrainingResult<Real> result;
  result.vocab = vocab ? std::move(*vocab) : build_vocab(corpus, config.min_count, config.byte_limit);
  const auto table = build_unigram_table(result.vocab, config.negative_power, config.table_size);
  Rng init_rng(init_seed(config.seed));
  auto model = init_model<Real>(result.vocab.size(), config.dim, init_rng);
  if (config.workers > 1) {
    auto dist = run_distributed(model, result.vocab, table, corpus, config, config.workers,
                                SyncPolicy{config.sync_period_words});
    result.model = std::move(dist.model);
    result.report = dist.combined;
    result.worker_reports = std::move(dist.workers);
    result.rounds = std::move(dist.rounds);
    return result;
  }
  result.report = config.trainer == TrainerKind::hogwild
                      ? run_hogwild(model, result.vocab, table, corpus, config)
                      : run_hogbatch(model, result.vocab, table, corpus, config);
  result.model = std::move(model);
  return result;
}

}  // namespace w2v
