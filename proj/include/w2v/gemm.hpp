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
#include <cstddef>

#include "w2v/model.hpp"

// Small dense kernels behind the batched trainer. Every output element is
// accumulated in a fixed, documented order so that 64-bit results are
// reproducible against scalar reference loops; the loops are arranged so the
// innermost index is contiguous and independent across iterations, which lets
// the compiler vectorize without reassociating any sum.
namespace w2v::gemm {

/// c = a * b^T; c[i][j] = sum over d (ascending) of a[i][d] * b[j][d], starting from 0.
/// `bt` is scratch for the transpose of b.
template <class Real>
void abt(const Matrix<Real>& a, const Matrix<Real>& b, Matrix<Real>& c, Matrix<Real>& bt) {
  const std::size_t rows = a.rows(), cols = b.rows(), depth = a.cols();
  bt.reshape(depth, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t d = 0; d < depth; ++d) bt(d, j) = b(j, d);
  }
  c.reshape(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Real* __restrict crow = c.row(i).data();
    std::fill(crow, crow + cols, Real(0));
    for (std::size_t d = 0; d < depth; ++d) {
      const Real av = a(i, d);
      const Real* __restrict btrow = bt.row(d).data();
      for (std::size_t j = 0; j < cols; ++j) crow[j] += av * btrow[j];
    }
  }
}

/// g = scale * (e * b); the sum over j (ascending, from 0) is formed first and
/// scaled afterwards.
template <class Real>
void scaled_ab(Real scale, const Matrix<Real>& e, const Matrix<Real>& b, Matrix<Real>& g) {
  const std::size_t rows = e.rows(), inner = e.cols(), depth = b.cols();
  g.reshape(rows, depth);
  for (std::size_t i = 0; i < rows; ++i) {
    Real* __restrict grow = g.row(i).data();
    std::fill(grow, grow + depth, Real(0));
    for (std::size_t j = 0; j < inner; ++j) {
      const Real ev = e(i, j);
      const Real* __restrict brow = b.row(j).data();
      for (std::size_t d = 0; d < depth; ++d) grow[d] += ev * brow[d];
    }
    for (std::size_t d = 0; d < depth; ++d) grow[d] = scale * grow[d];
  }
}

/// g = (scale * e)^T * a; g[j][d] = sum over i (ascending) of (scale * e[i][j]) * a[i][d],
/// the first term initializing the sum.
template <class Real>
void scaled_atb(Real scale, const Matrix<Real>& e, const Matrix<Real>& a, Matrix<Real>& g) {
  const std::size_t inner = e.rows(), cols = e.cols(), depth = a.cols();
  g.reshape(cols, depth);
  for (std::size_t j = 0; j < cols; ++j) {
    Real* __restrict grow = g.row(j).data();
    for (std::size_t i = 0; i < inner; ++i) {
      const Real s = scale * e(i, j);
      const Real* __restrict arow = a.row(i).data();
      if (i == 0) {
        for (std::size_t d = 0; d < depth; ++d) grow[d] = s * arow[d];
      } else {
        for (std::size_t d = 0; d < depth; ++d) grow[d] += s * arow[d];
      }
    }
    if (inner == 0) std::fill(grow, grow + depth, Real(0));
  }
}

}  // namespace w2v::gemm
