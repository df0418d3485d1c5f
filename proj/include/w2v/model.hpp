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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <new>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "w2v/corpus.hpp"
#include "w2v/error.hpp"
#include "w2v/sampling.hpp"

namespace w2v {

/// Dense row-major matrix. Rows are contiguous.
template <class Real>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Real fill = Real(0)) : rows_(rows), cols_(cols) {
    try {
      data_.assign(rows * cols, fill);
    } catch (const std::bad_alloc&) {
      throw AllocationError(static_cast<std::uint64_t>(rows) * cols * sizeof(Real));
    } catch (const std::length_error&) {
      throw AllocationError(static_cast<std::uint64_t>(rows) * cols * sizeof(Real));
    }
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<Real> data() noexcept { return data_; }
  std::span<const Real> data() const noexcept { return data_; }
  std::span<Real> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const Real> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  Real& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  Real operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  /// Keeps the allocation when shrinking; contents are unspecified afterwards.
  void reshape(std::size_t rows, std::size_t cols) {
    rows_ = rows;
    cols_ = cols;
    if (data_.size() < rows * cols) data_.resize(rows * cols);
  }

  template <class To>
  Matrix<To> cast() const {
    Matrix<To> m(rows_, cols_);
    std::transform(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(rows_ * cols_), m.data().begin(),
                   [](Real v) { return static_cast<To>(v); });
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           std::equal(a.data_.begin(), a.data_.begin() + static_cast<std::ptrdiff_t>(a.rows_ * a.cols_),
                      b.data_.begin());
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

/// Input-side and output-side word representations, both V x D.
template <class Real>
struct BasicEmbeddingModel {
  Matrix<Real> in;
  Matrix<Real> out;

  std::size_t vocab_size() const noexcept { return in.rows(); }
  std::size_t dim() const noexcept { return in.cols(); }

  bool all_finite() const {
    auto finite = [](Real v) { return std::isfinite(v); };
    return std::all_of(in.data().begin(), in.data().end(), finite) &&
           std::all_of(out.data().begin(), out.data().end(), finite);
  }

  template <class To>
  BasicEmbeddingModel<To> cast() const {
    return {in.template cast<To>(), out.template cast<To>()};
  }

  friend bool operator==(const BasicEmbeddingModel&, const BasicEmbeddingModel&) = default;
};

using EmbeddingModel = BasicEmbeddingModel<float>;

/// m_in uniform in [-0.5/D, 0.5/D), m_out zero. Values are drawn in double so a
/// 64-bit model and a 32-bit model from the same seed start from the same point.
template <class Real>
BasicEmbeddingModel<Real> init_model(std::size_t vocab_size, std::size_t dim, Rng& rng) {
  if (vocab_size == 0 || dim == 0) throw ConfigError("model needs V >= 1 and D >= 1");
  BasicEmbeddingModel<Real> model{Matrix<Real>(vocab_size, dim), Matrix<Real>(vocab_size, dim)};
  for (auto& v : model.in.data()) {
    v = static_cast<Real>((rng.uniform16() - 0.5) / static_cast<double>(dim));
  }
  return model;
}

inline constexpr double kDefaultAlpha = 0.025;
inline constexpr double kAlphaFloorFraction = 1e-4;
inline constexpr std::uint64_t kAlphaUpdateInterval = 10'000;

/// Linear decay from alpha0 down to alpha0 * floor_fraction.
struct LearningRate {
  double alpha0 = kDefaultAlpha;
  double floor_fraction = kAlphaFloorFraction;
  std::uint64_t words_total = 0;
  std::uint64_t words_done = 0;

  double at(std::uint64_t done) const {
    const double progress = static_cast<double>(done) / (static_cast<double>(words_total) + 1.0);
    return alpha0 * std::max(1.0 - progress, floor_fraction);
  }
};

inline double current_alpha(const LearningRate& lr) { return lr.at(lr.words_done); }

/// Tokens plus one vector per token, as read back from a vector file.
struct WordVectors {
  std::vector<std::string> tokens;
  Matrix<float> vectors;
};

enum class VectorFormat { automatic, text, binary };

/// `V D` header, then one record per word. Text records are `token v1 .. vD`
/// with 6 significant digits; binary records are `token `, D little-endian
/// float32 values and a newline.
void save_vectors(const Matrix<float>& vectors, std::span<const std::string> tokens,
                  const std::filesystem::path& path, bool binary);

template <class Real>
void save_vectors(const BasicEmbeddingModel<Real>& model, const Vocabulary& vocab, const std::filesystem::path& path,
                  bool binary) {
  if (model.vocab_size() != vocab.size()) throw ConfigError("model and vocabulary sizes differ");
  std::vector<std::string> tokens;
  tokens.reserve(vocab.size());
  for (const auto& e : vocab.entries()) tokens.push_back(e.token);
  if constexpr (std::is_same_v<Real, float>) {
    save_vectors(model.in, tokens, path, binary);
  } else {
    save_vectors(model.in.template cast<float>(), tokens, path, binary);
  }
}

/// Throws FormatError (with byte offset) on a malformed header, a record
/// whose dimension disagrees with the header, or a truncated file.
WordVectors load_vectors(const std::filesystem::path& path, VectorFormat format = VectorFormat::automatic);

}  // namespace w2v
