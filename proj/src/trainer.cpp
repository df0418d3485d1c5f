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

#include "w2v/trainer.hpp"

#include <string>

namespace w2v {

std::string_view to_string(TrainerKind kind) {
  return kind == TrainerKind::hogwild ? "hogwild" : "hogbatch";
}

TrainerKind parse_trainer(std::string_view name) {
  if (name == "hogwild") return TrainerKind::hogwild;
  if (name == "hogbatch") return TrainerKind::hogbatch;
  throw ConfigError("unknown trainer '" + std::string(name) + "' (expected hogwild or hogbatch)");
}

std::string_view to_string(SigmoidMode mode) { return mode == SigmoidMode::exact ? "exact" : "table"; }

SigmoidMode parse_sigmoid_mode(std::string_view name) {
  if (name == "exact") return SigmoidMode::exact;
  if (name == "table") return SigmoidMode::table;
  throw ConfigError("unknown sigmoid mode '" + std::string(name) + "' (expected exact or table)");
}

void TrainingConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(dim >= 1, "dim must be >= 1");
  require(negative >= 0, "negative must be >= 0");
  require(window >= 1, "window must be >= 1");
  require(sample >= 0, "sample must be >= 0");
  require(min_count >= 1, "min-count must be >= 1");
  require(alpha0 > 0, "alpha must be > 0");
  require(iterations >= 1, "iter must be >= 1");
  require(threads >= 1, "threads must be >= 1");
  require(batch_windows >= 1, "batch-windows must be >= 1");
  require(workers >= 1, "workers must be >= 1");
  require(negative_power >= 0, "negative-power must be >= 0");
  require(table_size >= 1, "table-size must be >= 1");
  require(max_sentence_length >= 1, "max sentence length must be >= 1");
}

void subsample(std::span<const WordId> sentence, std::span<const double> keep, bool enabled, Rng& rng,
               std::vector<WordId>& out) {
  out.clear();
  if (!enabled) {
    out.assign(sentence.begin(), sentence.end());
    return;
  }
  for (const WordId w : sentence) {
    const double r = rng.uniform16();
    if (keep[w] < r) continue;
    out.push_back(w);
  }
}

}  // namespace w2v
