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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "w2v/config.hpp"

namespace w2v {

struct BenchRecord {
  TrainerKind trainer = TrainerKind::hogbatch;
  int threads = 1;
  double words_per_sec = 0;
  std::uint64_t words_processed = 0;
  std::uint64_t row_writes = 0;
  std::uint64_t gemm_calls = 0;
  double wall_seconds = 0;
  std::string error;  // non-empty when the run failed
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::string machine;
};

inline constexpr std::uint64_t kDefaultBenchBytes = 100ull << 20;

/// "<cpu model>, <n> hardware threads".
std::string machine_descriptor();

/// Trains every trainer at every thread count on the same corpus prefix
/// (config.byte_limit) with the same vocabulary, table and initial model.
/// A failing run is recorded with its error and the sweep continues.
BenchReport run_bench(const TrainingConfig& config, const std::filesystem::path& corpus,
                      std::span<const int> thread_counts,
                      std::span<const TrainerKind> trainers = std::span<const TrainerKind>());

/// `trainer,threads,words_per_sec,row_writes,gemm_calls,wall_seconds`.
void write_csv(const BenchReport& report, std::ostream& out);
/// Throughput (million words/sec) against thread count, one line per trainer.
void write_svg(const BenchReport& report, std::ostream& out);

nlohmann::json to_json(const TrainingReport& report);
nlohmann::json to_json(const BenchReport& report);

}  // namespace w2v
