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
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "w2v/corpus.hpp"
#include "w2v/model.hpp"
#include "w2v/sampling.hpp"

namespace w2v {

enum class TrainerKind { hogwild, hogbatch };

std::string_view to_string(TrainerKind kind);
TrainerKind parse_trainer(std::string_view name);
std::string_view to_string(SigmoidMode mode);
SigmoidMode parse_sigmoid_mode(std::string_view name);

inline constexpr std::uint64_t kSyncNever = std::numeric_limits<std::uint64_t>::max();
/// Sentinel for "synchronize once per pass over each worker's shard".
inline constexpr std::uint64_t kSyncPerEpoch = 0;

/// Every knob of a training run. Defaults follow the reference word2vec tool
/// for skip-gram with negative sampling.
struct TrainingConfig {
  std::size_t dim = 100;
  int negative = 5;
  int window = 5;
  double sample = 1e-3;
  std::uint64_t min_count = 5;
  double alpha0 = kDefaultAlpha;
  int iterations = 5;
  int threads = 1;
  TrainerKind trainer = TrainerKind::hogbatch;
  int batch_windows = 1;
  int workers = 1;
  std::uint64_t sync_period_words = kSyncPerEpoch;
  std::uint64_t seed = 1;
  SigmoidMode sigmoid_mode = SigmoidMode::exact;
  bool binary_output = false;
  double negative_power = kDefaultNegativePower;
  std::size_t table_size = kDefaultTableSize;
  bool allow_target_negative = false;
  std::size_t max_sentence_length = kDefaultMaxSentenceLength;
  /// Only the first `byte_limit` bytes of the corpus (snapped to a line end) are used.
  std::uint64_t byte_limit = std::numeric_limits<std::uint64_t>::max();

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

struct UpdateStats {
  std::uint64_t dot_products = 0;
  std::uint64_t row_writes = 0;
  std::uint64_t gemm_calls = 0;

  UpdateStats& operator+=(const UpdateStats& o) {
    dot_products += o.dot_products;
    row_writes += o.row_writes;
    gemm_calls += o.gemm_calls;
    return *this;
  }
  friend bool operator==(const UpdateStats&, const UpdateStats&) = default;
};

struct SyncRound {
  double seconds = 0;  // since training start
  std::uint64_t words_processed = 0;
};

struct TrainingReport {
  TrainerKind trainer = TrainerKind::hogbatch;
  int threads = 1;
  int epochs = 0;
  std::uint64_t words_processed = 0;
  double wall_seconds = 0;
  double words_per_sec = 0;
  UpdateStats updates;
  double final_alpha = 0;
};

}  // namespace w2v
