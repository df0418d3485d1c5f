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

#include "w2v/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include <fmt/format.h>

#include "w2v/pipeline.hpp"

namespace w2v {

namespace {

constexpr TrainerKind kBothTrainers[] = {TrainerKind::hogwild, TrainerKind::hogbatch};

}  // namespace

std::string machine_descriptor() {
  std::string model = "unknown cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) model = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  return fmt::format("{}, {} hardware threads", model, std::thread::hardware_concurrency());
}

BenchReport run_bench(const TrainingConfig& config, const std::filesystem::path& corpus,
                      std::span<const int> thread_counts, std::span<const TrainerKind> trainers) {
  if (thread_counts.empty()) throw ConfigError("bench needs at least one thread count");
  if (trainers.empty()) trainers = kBothTrainers;
  config.validate();

  BenchReport report;
  report.machine = machine_descriptor();
  const auto vocab = build_vocab(corpus, config.min_count, config.byte_limit);
  const auto table = build_unigram_table(vocab, config.negative_power, config.table_size);
  Rng init_rng(init_seed(config.seed));
  const auto initial = init_model<float>(vocab.size(), config.dim, init_rng);

  for (const int threads : thread_counts) {
    for (const TrainerKind trainer : trainers) {
      BenchRecord record;
      record.trainer = trainer;
      record.threads = threads;
      try {
        TrainingConfig run = config;
        run.threads = threads;
        run.trainer = trainer;
        run.workers = 1;
        auto model = initial;
        const auto r = trainer == TrainerKind::hogwild ? run_hogwild(model, vocab, table, corpus, run)
                                                       : run_hogbatch(model, vocab, table, corpus, run);
        record.words_per_sec = r.words_per_sec;
        record.words_processed = r.words_processed;
        record.row_writes = r.updates.row_writes;
        record.gemm_calls = r.updates.gemm_calls;
        record.wall_seconds = r.wall_seconds;
      } catch (const std::exception& e) {
        record.error = e.what();
      }
      report.records.push_back(std::move(record));
    }
  }
  return report;
}

void write_csv(const BenchReport& report, std::ostream& out) {
  out << "trainer,threads,words_per_sec,row_writes,gemm_calls,wall_seconds\n";
  for (const auto& r : report.records) {
    out << fmt::format("{},{},{:.1f},{},{},{:.6f}\n", to_string(r.trainer), r.threads, r.words_per_sec,
                       r.row_writes, r.gemm_calls, r.wall_seconds);
  }
}

void write_svg(const BenchReport& report, std::ostream& out) {
  constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 90;
  const double plot_w = width - left - right, plot_h = height - top - bottom;

  int max_threads = 1;
  double max_rate = 0;
  for (const auto& r : report.records) {
    max_threads = std::max(max_threads, r.threads);
    max_rate = std::max(max_rate, r.words_per_sec / 1e6);
  }
  if (max_rate <= 0) max_rate = 1;
  const double y_top = max_rate * 1.1;
  auto px = [&](double threads) { return left + (max_threads > 1 ? (threads - 1) / (max_threads - 1) : 0.5) * plot_w; };
  auto py = [&](double rate) { return top + plot_h - rate / y_top * plot_h; };

  out << fmt::format(R"svg(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)svg",
                     width, height)
      << "\n";
  out << fmt::format(R"svg(<rect width="{}" height="{}" fill="white"/>)svg", width, height) << "\n";
  out << fmt::format(R"svg(<text x="{}" y="22" font-size="14" text-anchor="middle">Throughput vs threads</text>)svg",
                     width / 2)
      << "\n";
  out << fmt::format(R"svg(<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>)svg", left, top, top + plot_h) << "\n";
  out << fmt::format(R"svg(<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>)svg", left, top + plot_h,
                     left + plot_w)
      << "\n";
  for (int i = 0; i <= 4; ++i) {
    const double rate = y_top * i / 4;
    out << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="end">{:.2f}</text>)svg", left - 6, py(rate) + 4, rate)
        << "\n";
  }
  std::vector<int> ticks;
  for (const auto& r : report.records) ticks.push_back(r.threads);
  std::sort(ticks.begin(), ticks.end());
  ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
  for (int t : ticks) {
    out << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="middle">{}</text>)svg", px(t), top + plot_h + 16, t) << "\n";
  }
  out << fmt::format(R"svg(<text x="{}" y="{}" text-anchor="middle">threads</text>)svg", left + plot_w / 2,
                     top + plot_h + 34)
      << "\n";
  out << fmt::format(R"svg(<text x="16" y="{}" transform="rotate(-90 16 {})" text-anchor="middle">million words/sec</text>)svg",
                     top + plot_h / 2, top + plot_h / 2)
      << "\n";

  const char* colors[] = {"#d62728", "#1f77b4"};
  int series = 0;
  for (const TrainerKind trainer : kBothTrainers) {
    std::vector<std::pair<int, double>> points;
    for (const auto& r : report.records) {
      if (r.trainer == trainer && r.error.empty()) points.emplace_back(r.threads, r.words_per_sec / 1e6);
    }
    std::sort(points.begin(), points.end());
    const char* color = colors[series];
    if (!points.empty()) {
      std::string path;
      for (const auto& [t, rate] : points) path += fmt::format("{:.1f},{:.1f} ", px(t), py(rate));
      out << fmt::format(R"svg(<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>)svg", color, path) << "\n";
      for (const auto& [t, rate] : points) {
        out << fmt::format(R"svg(<circle cx="{:.1f}" cy="{:.1f}" r="3" fill="{}"/>)svg", px(t), py(rate), color) << "\n";
      }
    }
    out << fmt::format(R"svg(<text x="{}" y="{}" fill="{}">{}</text>)svg", left + 10, top + 14 + 16 * series, color,
                       to_string(trainer))
        << "\n";
    ++series;
  }
  out << fmt::format(R"svg(<text x="{}" y="{}" font-size="10">{}</text>)svg", left, height - 30, report.machine) << "\n";
  out << fmt::format(
             R"svg(<text x="{}" y="{}" font-size="10">Published reference, 36-core Xeon E5-2697 v4: hogwild 1.6M, hogbatch 5.8M words/sec</text>)svg",
             left, height - 14)
      << "\n";
  out << "</svg>\n";
}

nlohmann::json to_json(const TrainingReport& report) {
  nlohmann::json j;
  j["trainer"] = std::string(to_string(report.trainer));
  j["threads"] = report.threads;
  j["epochs"] = report.epochs;
  j["words_processed"] = report.words_processed;
  j["wall_seconds"] = report.wall_seconds;
  j["words_per_sec"] = report.words_per_sec;
  j["total_row_updates"] = report.updates.row_writes;
  j["dot_products"] = report.updates.dot_products;
  j["final_alpha"] = report.final_alpha;
  if (report.trainer == TrainerKind::hogbatch) {
    j["gemm_calls"] = report.updates.gemm_calls;
    j["row_writes"] = report.updates.row_writes;
  }
  return j;
}

nlohmann::json to_json(const BenchReport& report) {
  nlohmann::json j;
  j["machine"] = report.machine;
  j["records"] = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json rec{{"trainer", std::string(to_string(r.trainer))},
                       {"threads", r.threads},
                       {"words_per_sec", r.words_per_sec},
                       {"words_processed", r.words_processed},
                       {"row_writes", r.row_writes},
                       {"gemm_calls", r.gemm_calls},
                       {"wall_seconds", r.wall_seconds}};
    if (!r.error.empty()) rec["error"] = r.error;
    j["records"].push_back(std::move(rec));
  }
  j["reference_points"] = {
      {"machine", "36-core Intel Xeon E5-2697 v4"},
      {"hogwild_words_per_sec", 1.6e6},
      {"hogbatch_words_per_sec", 5.8e6},
  };
  return j;
}

}  // namespace w2v
