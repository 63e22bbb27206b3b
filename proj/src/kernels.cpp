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

#include "ncm/kernels.hpp"

#include <cstddef>
#include <cstdint>

#ifdef NCM_HAVE_OPENMP
#include <omp.h>
#endif

#include "ncm/error.hpp"

namespace ncm::kernels {
namespace {

struct SlotGeometry {
  std::int64_t inner;   // k^(n - slot)
  std::int64_t outer;   // k^(slot - 1)
  std::int64_t h_stride;  // k^n
};

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

SlotGeometry geometry(std::size_t size, int dim_h, int dim_k, int n_slots, int slot) {
  if (slot < 1 || slot > n_slots) throw ShapeError("slot index out of range");
  SlotGeometry g{ipow(dim_k, n_slots - slot), ipow(dim_k, slot - 1), ipow(dim_k, n_slots)};
  if (static_cast<std::int64_t>(size) != dim_h * g.h_stride) {
    throw ShapeError("chain vector length does not match dimensions");
  }
  return g;
}

inline void pair_block(std::span<const Complex> in, std::span<Complex> out, const ComplexMatrix& op,
                       int dim_h, int dim_k, const SlotGeometry& g, std::int64_t t,
                       Complex* gathered) {
  const std::int64_t o = t / g.inner;
  const std::int64_t r = t % g.inner;
  const std::int64_t base = o * g.inner * dim_k + r;
  const int m = dim_h * dim_k;
  for (int ih = 0; ih < dim_h; ++ih) {
    for (int is = 0; is < dim_k; ++is) {
      gathered[ih * dim_k + is] = in[static_cast<std::size_t>(ih * g.h_stride + base + is * g.inner)];
    }
  }
  for (int row = 0; row < m; ++row) {
    Complex acc = 0.0;
    for (int c = 0; c < m; ++c) acc += op(row, c) * gathered[c];
    const int ih = row / dim_k;
    const int is = row % dim_k;
    out[static_cast<std::size_t>(ih * g.h_stride + base + is * g.inner)] = acc;
  }
}

inline void site_block(std::span<const Complex> in, std::span<Complex> out, const ComplexMatrix& op,
                       int dim_k, const SlotGeometry& g, std::int64_t t, Complex* gathered) {
  // t ranges over (i_H, outer, inner) with the slot index removed.
  const std::int64_t per_h = g.outer * g.inner;
  const std::int64_t ih = t / per_h;
  const std::int64_t rest = t % per_h;
  const std::int64_t o = rest / g.inner;
  const std::int64_t r = rest % g.inner;
  const std::int64_t base = ih * g.h_stride + o * g.inner * dim_k + r;
  for (int is = 0; is < dim_k; ++is) gathered[is] = in[static_cast<std::size_t>(base + is * g.inner)];
  for (int row = 0; row < dim_k; ++row) {
    Complex acc = 0.0;
    for (int c = 0; c < dim_k; ++c) acc += op(row, c) * gathered[c];
    out[static_cast<std::size_t>(base + row * g.inner)] = acc;
  }
}

void check_op(const ComplexMatrix& op, int dim) {
  if (op.rows() != dim || op.cols() != dim) throw ShapeError("kernel operator has wrong shape");
}

// Depth-first traversal below one word. `running` is A_{a_n} ... A_{a_2} B_{a_1}
// for the current word of length `depth` and rank `rank` within its level.
void descend(const Colligation& col, const WordIndex& index, int depth, std::size_t rank,
             const ComplexMatrix& running, std::vector<ComplexMatrix>& out) {
  out[index.offset(depth) + rank] = col.c * running;
  if (depth == index.max_len()) return;
  ComplexMatrix next;
  for (int j = 0; j < col.d; ++j) {
    next.noalias() = col.a[static_cast<std::size_t>(j)] * running;
    descend(col, index, depth + 1, rank * static_cast<std::size_t>(col.d) + static_cast<std::size_t>(j),
            next, out);
  }
}

void prepare(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out) {
  if (index.d() != col.d) throw ShapeError("word index alphabet differs from colligation");
  out.assign(index.total(), ComplexMatrix());
  out[0] = col.dmat;
}

}  // namespace

int max_threads() {
#ifdef NCM_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void apply_pair_serial(std::span<const Complex> in, std::span<Complex> out, const ComplexMatrix& op,
                       int dim_h, int dim_k, int n_slots, int slot) {
  const SlotGeometry g = geometry(in.size(), dim_h, dim_k, n_slots, slot);
  if (out.size() != in.size()) throw ShapeError("output length differs from input");
  check_op(op, dim_h * dim_k);
  std::vector<Complex> gathered(static_cast<std::size_t>(dim_h * dim_k));
  const std::int64_t blocks = g.outer * g.inner;
  for (std::int64_t t = 0; t < blocks; ++t) {
    pair_block(in, out, op, dim_h, dim_k, g, t, gathered.data());
  }
}

void apply_pair_omp(std::span<const Complex> in, std::span<Complex> out, const ComplexMatrix& op,
                    int dim_h, int dim_k, int n_slots, int slot) {
  const SlotGeometry g = geometry(in.size(), dim_h, dim_k, n_slots, slot);
  if (out.size() != in.size()) throw ShapeError("output length differs from input");
  check_op(op, dim_h * dim_k);
  const std::int64_t blocks = g.outer * g.inner;
#pragma omp parallel
  {
    std::vector<Complex> gathered(static_cast<std::size_t>(dim_h * dim_k));
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < blocks; ++t) {
      pair_block(in, out, op, dim_h, dim_k, g, t, gathered.data());
    }
  }
}

void apply_site_serial(std::span<const Complex> in, std::span<Complex> out, const ComplexMatrix& op,
                       int dim_h, int dim_k, int n_slots, int slot) {
  const SlotGeometry g = geometry(in.size(), dim_h, dim_k, n_slots, slot);
  if (out.size() != in.size()) throw ShapeError("output length differs from input");
  check_op(op, dim_k);
  std::vector<Complex> gathered(static_cast<std::size_t>(dim_k));
  const std::int64_t blocks = dim_h * g.outer * g.inner;
  for (std::int64_t t = 0; t < blocks; ++t) site_block(in, out, op, dim_k, g, t, gathered.data());
}

void apply_site_omp(std::span<const Complex> in, std::span<Complex> out, const ComplexMatrix& op,
                    int dim_h, int dim_k, int n_slots, int slot) {
  const SlotGeometry g = geometry(in.size(), dim_h, dim_k, n_slots, slot);
  if (out.size() != in.size()) throw ShapeError("output length differs from input");
  check_op(op, dim_k);
  const std::int64_t blocks = dim_h * g.outer * g.inner;
#pragma omp parallel
  {
    std::vector<Complex> gathered(static_cast<std::size_t>(dim_k));
#pragma omp for schedule(static)
    for (std::int64_t t = 0; t < blocks; ++t) site_block(in, out, op, dim_k, g, t, gathered.data());
  }
}

void series_naive(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out) {
  prepare(col, index, out);
  for (std::size_t i = 1; i < index.total(); ++i) {
    const Word w = index.word_at(i);
    ComplexMatrix running = col.b[static_cast<std::size_t>(w[0] - 1)];
    for (std::size_t n = 1; n < w.size(); ++n) {
      running = col.a[static_cast<std::size_t>(w[n] - 1)] * running;
    }
    out[i] = col.c * running;
  }
}

void series_serial(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out) {
  prepare(col, index, out);
  if (index.max_len() == 0) return;
  for (int j = 0; j < col.d; ++j) {
    descend(col, index, 1, static_cast<std::size_t>(j), col.b[static_cast<std::size_t>(j)], out);
  }
}

void series_omp(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out) {
  prepare(col, index, out);
  if (index.max_len() == 0) return;

  // Split at the shallowest level with enough subtrees to keep every
  // thread busy; the levels above it are filled in serially.
  const std::size_t wanted = 8 * static_cast<std::size_t>(max_threads());
  int split = 1;
  while (split < index.max_len() && index.level_size(split) < wanted) ++split;

  // Running products for the split level, built breadth-first.
  std::vector<ComplexMatrix> level(col.b.begin(), col.b.end());
  for (std::size_t r = 0; r < level.size(); ++r) out[index.offset(1) + r] = col.c * level[r];
  for (int depth = 1; depth < split; ++depth) {
    std::vector<ComplexMatrix> next(level.size() * static_cast<std::size_t>(col.d));
    for (std::size_t r = 0; r < level.size(); ++r) {
      for (int j = 0; j < col.d; ++j) {
        const std::size_t child = r * static_cast<std::size_t>(col.d) + static_cast<std::size_t>(j);
        next[child] = col.a[static_cast<std::size_t>(j)] * level[r];
        out[index.offset(depth + 1) + child] = col.c * next[child];
      }
    }
    level = std::move(next);
  }

  const auto roots = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < roots; ++r) {
    descend(col, index, split, static_cast<std::size_t>(r), level[static_cast<std::size_t>(r)], out);
  }
}

}  // namespace ncm::kernels
