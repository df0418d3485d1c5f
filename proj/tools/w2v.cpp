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

// Command-line front end: train, bench, eval, vocab.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "w2v/bench.hpp"
#include "w2v/eval.hpp"
#include "w2v/pipeline.hpp"

namespace {

constexpr int kUsageError = 2;

struct TrainingFlags {
  w2v::TrainingConfig config;
  std::string trainer = "hogbatch";
  std::string sigmoid_mode = "exact";
  std::string sync_period = "epoch";
};

void add_training_flags(CLI::App& cmd, TrainingFlags& f) {
  auto& c = f.config;
  cmd.add_option("--dim,--size", c.dim, "Word vector dimension")->capture_default_str();
  cmd.add_option("--negative", c.negative, "Negative samples per positive example")->capture_default_str();
  cmd.add_option("--window", c.window, "Maximum context half-window")->capture_default_str();
  cmd.add_option("--sample", c.sample, "Subsampling threshold (0 disables)")->capture_default_str();
  cmd.add_option("--min-count", c.min_count, "Discard words rarer than this")->capture_default_str();
  cmd.add_option("--alpha", c.alpha0, "Initial learning rate")->capture_default_str();
  cmd.add_option("--iter", c.iterations, "Training epochs")->capture_default_str();
  cmd.add_option("--threads", c.threads, "Trainer threads (per worker)")->capture_default_str();
  cmd.add_option("--trainer", f.trainer, "hogwild or hogbatch")
      ->check(CLI::IsMember({"hogwild", "hogbatch"}))
      ->capture_default_str();
  cmd.add_option("--batch-windows", c.batch_windows, "Consecutive windows per hogbatch GEMM")->capture_default_str();
  cmd.add_option("--workers", c.workers, "Simulated data-parallel workers")->capture_default_str();
  cmd.add_option("--sync-period-words", f.sync_period,
                 "Words per worker between model averages: a number, 'epoch' or 'never'")
      ->capture_default_str();
  cmd.add_option("--seed", c.seed, "Random seed (W2V_SEED overrides)")->capture_default_str();
  cmd.add_option("--sigmoid-mode", f.sigmoid_mode, "exact or table")
      ->check(CLI::IsMember({"exact", "table"}))
      ->capture_default_str();
  cmd.add_option("--negative-power", c.negative_power, "Exponent of the negative-sampling distribution")
      ->capture_default_str();
  cmd.add_option("--table-size", c.table_size, "Slots in the negative-sampling table")->capture_default_str();
  cmd.add_flag("--allow-target-negative", c.allow_target_negative,
               "Do not redraw negatives that equal the positive target");
  cmd.add_option("--max-sentence-length", c.max_sentence_length, "Split longer sentences")->capture_default_str();
}

void finalize_training_flags(TrainingFlags& f) {
  auto& c = f.config;
  c.trainer = w2v::parse_trainer(f.trainer);
  c.sigmoid_mode = w2v::parse_sigmoid_mode(f.sigmoid_mode);
  if (f.sync_period == "epoch") {
    c.sync_period_words = w2v::kSyncPerEpoch;
  } else if (f.sync_period == "never") {
    c.sync_period_words = w2v::kSyncNever;
  } else {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(f.sync_period, &used);
      if (used != f.sync_period.size() || v == 0) throw std::invalid_argument("");
      c.sync_period_words = v;
    } catch (const std::exception&) {
      throw w2v::ConfigError("--sync-period-words must be a positive integer, 'epoch' or 'never'");
    }
  }
  if (const char* env = std::getenv("W2V_SEED")) {
    try {
      c.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw w2v::ConfigError(std::string("W2V_SEED is not an integer: ") + env);
    }
  }
  c.validate();
}

int cmd_train(const TrainingFlags& flags, const std::string& corpus, const std::string& output,
              const std::string& save_vocab, const std::string& read_vocab) {
  std::optional<w2v::Vocabulary> vocab;
  if (!read_vocab.empty()) {
    std::ifstream in(read_vocab);
    if (!in) throw w2v::IoError("cannot open " + read_vocab, 0);
    vocab = w2v::Vocabulary::load(in);
  }
  auto result = w2v::train_corpus<float>(flags.config, corpus, std::move(vocab));
  if (!save_vocab.empty()) {
    std::ofstream out(save_vocab);
    result.vocab.save(out);
  }
  w2v::save_vectors(result.model, result.vocab, output, flags.config.binary_output);

  auto report = w2v::to_json(result.report);
  report["vocab_size"] = result.vocab.size();
  if (flags.config.workers > 1) {
    report["workers"] = nlohmann::json::array();
    for (const auto& w : result.worker_reports) report["workers"].push_back(w2v::to_json(w));
    report["sync_rounds"] = nlohmann::json::array();
    for (const auto& r : result.rounds) {
      report["sync_rounds"].push_back({{"seconds", r.seconds}, {"words_processed", r.words_processed}});
    }
  }
  std::cout << report.dump() << std::endl;
  return 0;
}

int cmd_bench(const TrainingFlags& flags, const std::string& corpus, const std::vector<int>& threads,
              const std::vector<std::string>& trainer_names, const std::string& csv_path,
              const std::string& plot_path) {
  std::vector<w2v::TrainerKind> trainers;
  for (const auto& name : trainer_names) trainers.push_back(w2v::parse_trainer(name));
  const auto report = w2v::run_bench(flags.config, corpus, threads, trainers);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw w2v::IoError("cannot write " + csv_path, 0);
    w2v::write_csv(report, out);
  }
  if (!plot_path.empty()) {
    std::ofstream out(plot_path);
    if (!out) throw w2v::IoError("cannot write " + plot_path, 0);
    w2v::write_svg(report, out);
  }
  std::cout << w2v::to_json(report).dump(2) << std::endl;
  return 0;
}

int cmd_eval(const std::string& vectors_path, const std::string& similarity_path, const std::string& analogy_path,
             std::size_t top_vocab, bool case_sensitive) {
  const auto vectors = w2v::load_vectors(vectors_path);
  nlohmann::json out;
  if (!similarity_path.empty()) {
    const auto pairs = w2v::load_similarity(similarity_path);
    const auto sim = w2v::evaluate_similarity(vectors, pairs, !case_sensitive);
    out["spearman"] = sim.spearman ? nlohmann::json(*sim.spearman) : nlohmann::json(nullptr);
    out["pairs_used"] = sim.pairs_used;
    out["pairs_skipped"] = sim.pairs_skipped;
  }
  if (!analogy_path.empty()) {
    const auto questions = w2v::load_analogy(analogy_path);
    const auto result = w2v::analogy_accuracy(vectors, questions, top_vocab, !case_sensitive);
    out["analogy_overall"] = result.overall ? nlohmann::json(*result.overall) : nlohmann::json(nullptr);
    out["analogy_by_section"] = nlohmann::json::object();
    for (const auto& s : result.sections) {
      out["analogy_by_section"][s.section] = s.accuracy ? nlohmann::json(*s.accuracy) : nlohmann::json(nullptr);
    }
    out["questions_used"] = result.usable;
    out["questions_skipped"] = result.skipped;
  }
  std::cout << out.dump(2) << std::endl;
  return 0;
}

int cmd_vocab(const std::string& corpus, const std::string& output, std::uint64_t min_count) {
  const auto vocab = w2v::build_vocab(corpus, min_count);
  if (output.empty() || output == "-") {
    vocab.save(std::cout);
  } else {
    std::ofstream out(output);
    if (!out) throw w2v::IoError("cannot write " + output, 0);
    vocab.save(out);
  }
  std::cerr << "vocabulary: " << vocab.size() << " words, " << vocab.total_words() << " tokens\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skip-gram word2vec trainer (hogwild and hogbatch)", "w2v"};
  app.require_subcommand(1);

  TrainingFlags train_flags;
  std::string corpus, output, save_vocab, read_vocab;
  auto* train = app.add_subcommand("train", "Train word vectors");
  train->add_option("--train", corpus, "Corpus: whitespace-separated tokens, one sentence per line")
      ->required()
      ->check(CLI::ExistingFile);
  train->add_option("--output", output, "Output vector file")->required();
  train->add_flag("--binary", train_flags.config.binary_output, "Write the binary vector format");
  train->add_option("--save-vocab", save_vocab, "Also write the vocabulary");
  train->add_option("--read-vocab", read_vocab, "Use this vocabulary instead of counting the corpus")
      ->check(CLI::ExistingFile);
  add_training_flags(*train, train_flags);

  TrainingFlags bench_flags;
  bench_flags.config.iterations = 1;
  bench_flags.config.byte_limit = w2v::kDefaultBenchBytes;
  std::string bench_corpus, csv_path, plot_path;
  std::vector<int> bench_threads{1, 2, 4, 8};
  std::vector<std::string> bench_trainers{"hogwild", "hogbatch"};
  auto* bench = app.add_subcommand("bench", "Throughput of both trainers across thread counts");
  bench->add_option("--train", bench_corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  bench->add_option("--thread-list", bench_threads, "Thread counts, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--trainers", bench_trainers, "Trainers to run, comma separated")
      ->delimiter(',')
      ->check(CLI::IsMember({"hogwild", "hogbatch"}))
      ->capture_default_str();
  bench->add_option("--max-bytes", bench_flags.config.byte_limit, "Corpus prefix size in bytes")
      ->capture_default_str();
  bench->add_option("--csv", csv_path, "Write per-run records as CSV");
  bench->add_option("--plot", plot_path, "Write an SVG throughput plot");
  add_training_flags(*bench, bench_flags);

  std::string vectors_path, similarity_path, analogy_path;
  std::size_t top_vocab = w2v::kDefaultAnalogyVocab;
  bool case_sensitive = false;
  auto* eval = app.add_subcommand("eval", "Word similarity and analogy scores of a vector file");
  eval->add_option("--vectors", vectors_path, "Vector file (text or binary)")->required()->check(CLI::ExistingFile);
  eval->add_option("--similarity", similarity_path, "Word-pair similarity file (e.g. WS-353)")
      ->check(CLI::ExistingFile);
  eval->add_option("--analogy", analogy_path, "Analogy questions (questions-words.txt layout)")
      ->check(CLI::ExistingFile);
  eval->add_option("--top-vocab", top_vocab, "Analogy candidates: most frequent N words")->capture_default_str();
  eval->add_flag("--case-sensitive", case_sensitive, "Match words without case folding");

  std::string vocab_corpus, vocab_output;
  std::uint64_t vocab_min_count = 5;
  auto* vocab = app.add_subcommand("vocab", "Count a corpus and write `token count` lines");
  vocab->add_option("--train", vocab_corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  vocab->add_option("--output", vocab_output, "Output file ('-' for stdout)");
  vocab->add_option("--min-count", vocab_min_count, "Discard words rarer than this")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*train) {
      finalize_training_flags(train_flags);
      return cmd_train(train_flags, corpus, output, save_vocab, read_vocab);
    }
    if (*bench) {
      finalize_training_flags(bench_flags);
      return cmd_bench(bench_flags, bench_corpus, bench_threads, bench_trainers, csv_path, plot_path);
    }
    if (*eval) {
      if (similarity_path.empty() && analogy_path.empty()) {
        std::cerr << "eval: give --similarity and/or --analogy\n";
        return kUsageError;
      }
      return cmd_eval(vectors_path, similarity_path, analogy_path, top_vocab, case_sensitive);
    }
    if (*vocab) return cmd_vocab(vocab_corpus, vocab_output, vocab_min_count);
  } catch (const w2v::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
