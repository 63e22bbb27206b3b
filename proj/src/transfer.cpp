// Copyright 2026 The ncmarkov Authors
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

#include "ncm/transfer.hpp"

#include <algorithm>

#include "ncm/error.hpp"
#include "ncm/kernels.hpp"
#include "ncm/tolerances.hpp"

namespace ncm {

SignalSequence SignalSequence::zeros(int d, int max_len, int dim) {
  const WordIndex index(d, max_len);
  SignalSequence s{d, max_len, dim, {}};
  s.values.assign(index.total(), ComplexVector::Zero(dim));
  return s;
}

ComplexMatrix coefficient(const Colligation& col, const Word& w) {
  if (w.empty()) return col.dmat;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 1 || w[i] > col.d) throw ShapeError("letter out of range in " + w.to_string());
  }
  ComplexMatrix running = col.b[static_cast<std::size_t>(w[0] - 1)];
  for (std::size_t n = 1; n < w.size(); ++n) {
    running = col.a[static_cast<std::size_t>(w[n] - 1)] * running;
  }
  return col.c * running;
}

TransferSeries series(const Colligation& col, int max_len) {
  TransferSeries s;
  s.d = col.d;
  s.max_len = max_len;
  s.dim_u = col.dim_u;
  s.dim_y = col.dim_y;
  s.index = WordIndex(col.d, max_len);
  kernels::series_omp(col, s.index, s.coeffs);
  return s;
}

IoResult io_map(const Colligation& col, const SignalSequence& u, const ComplexVector& x0) {
  if (u.d != col.d) throw ShapeError("io_map: input alphabet differs from colligation");
  if (u.dim != col.dim_u) throw ShapeError("io_map: input dimension differs from dim_u");
  if (x0.size() != col.dim_h) throw ShapeError("io_map: initial state dimension differs from dim_h");
  const WordIndex index(u.d, u.max_len);
  if (u.values.size() != index.total()) throw ShapeError("io_map: input sequence has wrong length");

  IoResult r{SignalSequence::zeros(u.d, u.max_len, col.dim_h),
             SignalSequence::zeros(u.d, u.max_len, col.dim_y)};
  r.x.values[0] = x0;
  // Level by level is prefix-closed: x(w) is final before w is extended.
  // The children of the word with rank q at level n sit at ranks q*d + j.
  const auto d = static_cast<std::size_t>(col.d);
  for (int level = 0; level <= index.max_len(); ++level) {
    for (std::size_t q = 0; q < index.level_size(level); ++q) {
      const std::size_t i = index.offset(level) + q;
      const ComplexVector& x = r.x.values[i];
      const ComplexVector& in = u.values[i];
      r.y.values[i] = col.c * x + col.dmat * in;
      if (level == index.max_len()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        r.x.values[index.offset(level + 1) + q * d + j] = col.a[j] * x + col.b[j] * in;
      }
    }
  }
  return r;
}

ComplexMatrix toeplitz(const TransferSeries& s, int n) {
  if (n < 0 || n > s.max_len) throw ShapeError("toeplitz: truncation exceeds series length");
  const WordIndex index(s.d, n);
  const auto total = static_cast<Eigen::Index>(index.total());
  const Eigen::Index rows = total * s.dim_y;
  const Eigen::Index cols = total * s.dim_u;
  if (rows > static_cast<Eigen::Index>(kMaxToeplitzDim) || cols > static_cast<Eigen::Index>(kMaxToeplitzDim)) {
    throw GuardError("toeplitz: operator larger than " + std::to_string(kMaxToeplitzDim));
  }
  ComplexMatrix t = ComplexMatrix::Zero(rows, cols);
  const auto words = enumerate(s.d, n);
  for (Eigen::Index ci = 0; ci < total; ++ci) {
    const Word& c = words[static_cast<std::size_t>(ci)];
    // Every prefix b of c gives the block Theta(suffix).
    for (std::size_t cut = 0; cut <= c.size(); ++cut) {
      const Word b(std::vector<int>(c.letters().begin(), c.letters().begin() + static_cast<std::ptrdiff_t>(cut)));
      const Word a(std::vector<int>(c.letters().begin() + static_cast<std::ptrdiff_t>(cut), c.letters().end()));
      const auto bi = static_cast<Eigen::Index>(index.index_of(b));
      t.block(ci * s.dim_y, bi * s.dim_u, s.dim_y, s.dim_u) = s.at(a);
    }
  }
  return t;
}

double inner_defect(const TransferSeries& s, int n) {
  if (n < 0 || n > s.max_len) throw ShapeError("inner_defect: truncation exceeds series length");
  if (s.dim_u == 0) return 0.0;
  ComplexMatrix gap = ComplexMatrix::Identity(s.dim_u, s.dim_u);
  const std::size_t end = s.index.offset(n) + s.index.level_size(n);
  for (std::size_t i = 0; i < end; ++i) gap -= s.coeffs[i].adjoint() * s.coeffs[i];
  const auto eig = hermitian_eig(gap);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

double record_probability(const TransferSeries& s, const ComplexVector& eta, const Word& w) {
  if (eta.size() != s.dim_u) throw ShapeError("record_probability: eta is not in the input space");
  return (s.at(w) * eta).squaredNorm();
}

}  // namespace ncm
