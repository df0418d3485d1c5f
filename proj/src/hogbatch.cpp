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

#include "w2v/hogbatch.hpp"

namespace w2v {

bool append_window(Minibatch& batch, std::span<const WordId> sentence, std::size_t position, int half_window,
                   int negatives, const UnigramTable& table, Rng& rng, bool exclude_target) {
  const std::size_t n = sentence.size();
  const auto b = static_cast<std::size_t>(half_window);
  const std::size_t lo = position >= b ? position - b : 0;
  const std::size_t hi = std::min(n - 1, position + b);
  const std::size_t before = batch.input_ids.size();
  for (std::size_t c = lo; c <= hi; ++c) {
    if (c == position) continue;
    batch.input_ids.push_back(sentence[c]);
    batch.input_window.push_back(batch.windows);
  }
  if (batch.input_ids.size() == before) return false;

  const WordId target = sentence[position];
  batch.output_ids.push_back(target);
  batch.labels.push_back(1);
  batch.output_window.push_back(batch.windows);
  for (int k = 0; k < negatives; ++k) {
    batch.output_ids.push_back(exclude_target ? sample_negative(table, rng, target) : sample_any(table, rng));
    batch.labels.push_back(0);
    batch.output_window.push_back(batch.windows);
  }
  ++batch.windows;
  return true;
}

std::optional<Minibatch> build_minibatch(std::span<const WordId> sentence, std::size_t position, int half_window,
                                         int negatives, const UnigramTable& table, Rng& rng, bool exclude_target) {
  Minibatch batch;
  if (!append_window(batch, sentence, position, half_window, negatives, table, rng, exclude_target)) {
    return std::nullopt;
  }
  return batch;
}

}  // namespace w2v
