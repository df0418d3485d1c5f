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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "w2v/hogbatch.hpp"
#include "w2v/hogwild.hpp"

namespace w2v {
namespace {

template <class Real>
BasicEmbeddingModel<Real> random_model(std::size_t vocab, std::size_t dim, std::mt19937_64& gen, double spread = 0.5) {
  std::normal_distribution<double> value(0.0, spread);
  BasicEmbeddingModel<Real> m{Matrix<Real>(vocab, dim), Matrix<Real>(vocab, dim)};
  for (auto& v : m.in.data()) v = static_cast<Real>(value(gen));
  for (auto& v : m.out.data()) v = static_cast<Real>(value(gen));
  return m;
}

Minibatch single_window(std::vector<WordId> inputs, std::vector<WordId> outputs) {
  Minibatch batch;
  batch.input_ids = std::move(inputs);
  batch.output_ids = std::move(outputs);
  batch.labels.assign(batch.output_ids.size(), 0);
  batch.labels[0] = 1;
  batch.input_window.assign(batch.input_ids.size(), 0);
  batch.output_window.assign(batch.output_ids.size(), 0);
  batch.windows = 1;
  return batch;
}

TEST(Minibatch, ThreeWordSentence) {
  // Vocabulary ids: the = 0, cat = 1, sat = 2.
  const std::vector<std::uint64_t> counts{3, 2, 1};
  const UnigramTable table(counts, 0.75, 1000);
  Rng rng(1);
  const std::vector<WordId> sentence{0, 1, 2};
  const auto batch = build_minibatch(sentence, 1, 1, 2, table, rng);
  ASSERT_TRUE(batch);
  EXPECT_EQ(batch->input_ids, (std::vector<WordId>{0, 2}));
  ASSERT_EQ(batch->output_ids.size(), 3u);
  EXPECT_EQ(batch->output_ids[0], 1u);
  EXPECT_NE(batch->output_ids[1], 1u);
  EXPECT_NE(batch->output_ids[2], 1u);
  EXPECT_EQ(batch->labels, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(batch->row_writes(), 5u);
}

TEST(Minibatch, EdgeAndEmptyWindows) {
  const std::vector<std::uint64_t> counts{3, 2, 1};
  const UnigramTable table(counts, 0.75, 1000);
  Rng rng(1);
  const std::vector<WordId> sentence{0, 1, 2};
  const auto first = build_minibatch(sentence, 0, 5, 1, table, rng);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->input_ids, (std::vector<WordId>{1, 2}));
  const std::vector<WordId> lonely{0};
  const auto state = rng.state();
  EXPECT_FALSE(build_minibatch(lonely, 0, 5, 5, table, rng));
  EXPECT_EQ(rng.state(), state);
}

TEST(Minibatch, OutputsAlwaysTargetThenNegatives) {
  const std::vector<std::uint64_t> counts{9, 7, 5, 3, 2, 1};
  const UnigramTable table(counts, 0.75, 600);
  Rng rng(8);
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<WordId> word(0, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<WordId> sentence(1 + trial % 9);
    for (auto& w : sentence) w = word(gen);
    const std::size_t pos = static_cast<std::size_t>(trial) % sentence.size();
    const int k = trial % 7;
    const auto batch = build_minibatch(sentence, pos, 1 + trial % 4, k, table, rng);
    if (sentence.size() == 1) {
      EXPECT_FALSE(batch);
      continue;
    }
    ASSERT_TRUE(batch);
    ASSERT_EQ(batch->output_ids.size(), static_cast<std::size_t>(k) + 1);
    EXPECT_EQ(batch->output_ids[0], sentence[pos]);
    for (int j = 1; j <= k; ++j) EXPECT_NE(batch->output_ids[j], sentence[pos]);
    EXPECT_EQ(batch->labels[0], 1);
    EXPECT_EQ(std::count(batch->labels.begin(), batch->labels.end(), 0), k);
  }
}

TEST(BatchStep, ScoresAndErrors) {
  BasicEmbeddingModel<double> m{Matrix<double>(2, 2), Matrix<double>(2, 2)};
  m.in(0, 0) = 0.5;
  m.in(0, 1) = 0.5;
  m.out(1, 0) = 0.2;
  m.out(1, 1) = 0.2;
  const auto batch = single_window({0}, {1});
  BatchWorkspace<double> ws;
  gather(m, batch, ws);
  const auto& c = forward_scores(ws);
  ASSERT_EQ(c.rows(), 1u);
  ASSERT_EQ(c.cols(), 1u);
  EXPECT_NEAR(c(0, 0), 0.2, 1e-15);
  const auto& e = compute_errors(batch, ws);
  EXPECT_NEAR(e(0, 0), 1 - oracle::logistic(0.2), 1e-15);

  // Zero score: error 0.5 for the target, -0.5 for a negative.
  BasicEmbeddingModel<double> z{Matrix<double>(3, 2), Matrix<double>(3, 2)};
  const auto zb = single_window({0}, {1, 2});
  gather(z, zb, ws);
  forward_scores(ws);
  compute_errors(zb, ws);
  EXPECT_EQ(ws.errors(0, 0), 0.5);
  EXPECT_EQ(ws.errors(0, 1), -0.5);
}

TEST(BatchStep, SingleInputBitEqualsHogwild) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + trial % 16;
    const int k = trial % 8;
    const std::size_t vocab = static_cast<std::size_t>(k) + 3;
    auto wild = random_model<double>(vocab, dim, gen);
    auto batched = wild;
    std::vector<WordId> outputs{1};
    for (int j = 0; j < k; ++j) outputs.push_back(static_cast<WordId>(j + 2));
    const std::vector<WordId> input{0};
    std::size_t next = 1;
    std::vector<double> temp(dim);
    train_window_hogwild(wild, 1, std::span<const WordId>(input), k, 0.025, [&] { return outputs[next++]; },
                         std::span<double>(temp));
    BatchWorkspace<double> ws;
    train_batch(batched, single_window(input, outputs), ws, 0.025);
    ASSERT_EQ(wild, batched) << "trial " << trial;
  }
}

template <class Real>
void check_stale_read_equivalence(std::uint64_t seed, SigmoidMode mode) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> pick_v(2, 50), pick_d(1, 8), pick_n(1, 10), pick_k(0, 10);
  for (int trial = 0; trial < 1000; ++trial) {
    const int vocab = pick_v(gen);
    const auto dim = static_cast<std::size_t>(pick_d(gen));
    std::uniform_int_distribution<WordId> word(0, static_cast<WordId>(vocab - 1));
    std::vector<WordId> inputs(static_cast<std::size_t>(pick_n(gen)));
    for (auto& w : inputs) w = word(gen);
    std::vector<WordId> outputs(static_cast<std::size_t>(pick_k(gen)) + 1);
    for (auto& w : outputs) w = word(gen);
    auto expected = random_model<Real>(static_cast<std::size_t>(vocab), dim, gen, 2.0);
    auto actual = expected;
    const auto batch = single_window(inputs, outputs);
    oracle::stale_read_step(expected, std::span<const WordId>(inputs), std::span<const WordId>(outputs),
                            std::span<const std::uint8_t>(batch.labels), Real(0.05), mode);
    BatchWorkspace<Real> ws;
    const auto stats = train_batch(actual, batch, ws, Real(0.05), mode);
    ASSERT_EQ(expected, actual) << "trial " << trial;
    EXPECT_EQ(stats.row_writes, inputs.size() + outputs.size());
    EXPECT_EQ(stats.dot_products, inputs.size() * outputs.size());
    EXPECT_EQ(stats.gemm_calls, 3u);
  }
}

TEST(BatchStep, MatchesStaleReadReferenceDouble) { check_stale_read_equivalence<double>(41, SigmoidMode::exact); }
TEST(BatchStep, MatchesStaleReadReferenceFloat) { check_stale_read_equivalence<float>(42, SigmoidMode::exact); }
TEST(BatchStep, MatchesStaleReadReferenceTableSigmoid) {
  check_stale_read_equivalence<double>(43, SigmoidMode::table);
}

TEST(BatchStep, DuplicateIdsAccumulate) {
  BasicEmbeddingModel<double> m{Matrix<double>(3, 1), Matrix<double>(3, 1)};
  m.in(0, 0) = 1.0;
  m.out(1, 0) = 0.0;
  m.out(2, 0) = 0.0;
  const auto batch = single_window({0, 0}, {1, 2, 2});
  BatchWorkspace<double> ws;
  train_batch(m, batch, ws, 0.1);
  // All scores are 0: errors 0.5, -0.5, -0.5. Output rows see a = 1 twice.
  EXPECT_DOUBLE_EQ(m.out(1, 0), 2 * 0.1 * 0.5);
  EXPECT_DOUBLE_EQ(m.out(2, 0), 2 * 2 * 0.1 * -0.5);
  // Input gradient from the zero output rows is zero.
  EXPECT_DOUBLE_EQ(m.in(0, 0), 1.0);
}

TEST(BatchStep, UpdateIsNegativeScaledGradient) {
  std::mt19937_64 gen(77);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6, k = trial % 5, dim = 1 + trial % 7;
    const std::size_t vocab = n + k + 1;
    auto m = random_model<double>(vocab, dim, gen);
    const auto before = m;
    std::vector<WordId> inputs, outputs;
    for (std::size_t i = 0; i < n; ++i) inputs.push_back(static_cast<WordId>(i));
    for (std::size_t j = 0; j <= k; ++j) outputs.push_back(static_cast<WordId>(n + j));
    const auto batch = single_window(inputs, outputs);
    BatchWorkspace<double> ws;
    const double alpha = 0.01;
    train_batch(m, batch, ws, alpha);

    std::vector<std::vector<double>> ins, outs, step_in, step_out;
    for (auto w : inputs) {
      ins.emplace_back(before.in.row(w).begin(), before.in.row(w).end());
      step_in.emplace_back();
      for (std::size_t d = 0; d < dim; ++d) step_in.back().push_back((m.in(w, d) - before.in(w, d)) / -alpha);
    }
    for (auto w : outputs) {
      outs.emplace_back(before.out.row(w).begin(), before.out.row(w).end());
      step_out.emplace_back();
      for (std::size_t d = 0; d < dim; ++d) step_out.back().push_back((m.out(w, d) - before.out(w, d)) / -alpha);
    }
    const auto g = oracle::finite_difference_gradient(ins, outs, batch.labels);
    worst = std::max({worst, oracle::max_relative_error(step_in, g.in), oracle::max_relative_error(step_out, g.out)});
  }
  EXPECT_LE(worst, 1e-4);
}

TEST(Gemm, MatchesNaiveLoops) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> value;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 11, o = 1 + trial % 13, d = 1 + trial % 9;
    Matrix<double> a(n, d), b(o, d), e(n, o);
    for (auto* m : {&a, &b, &e}) {
      for (auto& v : m->data()) v = value(gen);
    }
    Matrix<double> c, bt, gi, go;
    gemm::abt(a, b, c, bt);
    EXPECT_EQ(c, oracle::naive_abt(a, b));
    gemm::scaled_ab(0.3, e, b, gi);
    EXPECT_EQ(gi, oracle::naive_scaled_ab(0.3, e, b));
    gemm::scaled_atb(0.3, e, a, go);
    EXPECT_EQ(go, oracle::naive_scaled_atb(0.3, e, a));
  }
}

TEST(Gemm, ReusedWorkspaceAfterShrinking) {
  Matrix<double> a(5, 3, 1.0), b(4, 3, 2.0), c, bt;
  gemm::abt(a, b, c, bt);
  Matrix<double> a2(2, 2, 1.0), b2(1, 2, 3.0);
  gemm::abt(a2, b2, c, bt);
  ASSERT_EQ(c.rows(), 2u);
  ASSERT_EQ(c.cols(), 1u);
  EXPECT_EQ(c(0, 0), 6.0);
  EXPECT_EQ(c(1, 0), 6.0);
}

TEST(HogbatchKernel, MultiWindowBatchesMaskCrossWindowPairs) {
  // Two windows in one batch: the result must equal training them one after
  // another against the same snapshot, i.e. a stale-read step per window
  // whose reads all come from the pre-batch model.
  BasicEmbeddingModel<double> m{Matrix<double>(4, 2, 0.1), Matrix<double>(4, 2, 0.2)};
  m.in(1, 0) = -0.3;
  Minibatch batch;
  const std::vector<std::uint64_t> counts{1, 1, 1, 1};
  const UnigramTable table(counts, 0.75, 4);
  Rng rng(3);
  const std::vector<WordId> sentence{0, 1, 2, 3};
  ASSERT_TRUE(append_window(batch, sentence, 0, 1, 0, table, rng));
  ASSERT_TRUE(append_window(batch, sentence, 3, 1, 0, table, rng));
  EXPECT_EQ(batch.windows, 2u);
  EXPECT_EQ(batch.input_ids, (std::vector<WordId>{1, 2}));
  EXPECT_EQ(batch.output_ids, (std::vector<WordId>{0, 3}));
  BatchWorkspace<double> ws;
  auto batched = m;
  train_batch(batched, batch, ws, 0.1);
  EXPECT_EQ(ws.errors(0, 1), 0.0);
  EXPECT_EQ(ws.errors(1, 0), 0.0);

  auto expected = m;
  const std::vector<std::uint8_t> one{1};
  const std::vector<WordId> in0{1}, out0{0}, in1{2}, out1{3};
  // Disjoint rows, so applying the two windows in sequence reads only pre-batch values.
  oracle::stale_read_step(expected, std::span<const WordId>(in0), std::span<const WordId>(out0),
                          std::span<const std::uint8_t>(one), 0.1);
  oracle::stale_read_step(expected, std::span<const WordId>(in1), std::span<const WordId>(out1),
                          std::span<const std::uint8_t>(one), 0.1);
  EXPECT_EQ(batched, expected);
}

TEST(HogbatchKernel, RowWritesBelowHogwildForSameSentence) {
  TrainingConfig config;
  config.dim = 4;
  config.window = 1;
  config.negative = 5;
  const std::vector<std::uint64_t> counts{5, 4, 3, 3, 2, 2, 1, 1};
  const UnigramTable table(counts, 0.75, 1000);
  const std::vector<WordId> sentence{0, 1, 2, 3, 4, 5, 6, 7, 0, 1, 2, 3};
  Rng r1(1), r2(1), init(1);
  auto m1 = init_model<float>(8, 4, init);
  auto m2 = m1;
  UpdateStats wild, batched;
  HogwildKernel<float>(config).train_sentence(m1, sentence, 0.025f, table, r1, wild);
  HogbatchKernel<float>(config).train_sentence(m2, sentence, 0.025f, table, r2, batched);
  EXPECT_LT(batched.row_writes, wild.row_writes);
  EXPECT_EQ(batched.gemm_calls, 3 * sentence.size());
  EXPECT_EQ(wild.gemm_calls, 0u);
}

}  // namespace
}  // namespace w2v
