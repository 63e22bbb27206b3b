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

#pragma once

#include <span>
#include <vector>

#include "ncm/linalg.hpp"
#include "ncm/model.hpp"
#include "ncm/words.hpp"

// Hot loops of the library. Each kernel has a serial reference version,
// kept for testing and benchmarking, and an OpenMP version used by the
// public API. Without OpenMP the _omp versions run serially.
namespace ncm::kernels {

int max_threads();

// Chain vectors: index = i_H * k^n + sum_l i_l * k^(n-l), slots l = 1..n.

/// out = (op acting on the (H, slot) pair) in. op is (dim_h*dim_k)^2 in the
/// H-major product basis. `in` and `out` must not alias.
void apply_pair_serial(std::span<const Complex> in, std::span<Complex> out,
                       const ComplexMatrix& op, int dim_h, int dim_k, int n_slots, int slot);
void apply_pair_omp(std::span<const Complex> in, std::span<Complex> out,
                    const ComplexMatrix& op, int dim_h, int dim_k, int n_slots, int slot);

/// out = (op acting on one slot) in; op is dim_k x dim_k.
void apply_site_serial(std::span<const Complex> in, std::span<Complex> out,
                       const ComplexMatrix& op, int dim_h, int dim_k, int n_slots, int slot);
void apply_site_omp(std::span<const Complex> in, std::span<Complex> out,
                    const ComplexMatrix& op, int dim_h, int dim_k, int n_slots, int slot);

/// Transfer coefficients for every word of `index`, stored at index_of(w).
/// naive: one product chain per word. serial: depth-first with the running
/// product A_{a_n} ... A_{a_2} B_{a_1} cached along the path, one multiply
/// per word. omp: the serial traversal fanned out over subtrees.
void series_naive(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out);
void series_serial(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out);
void series_omp(const Colligation& col, const WordIndex& index, std::vector<ComplexMatrix>& out);

}  // namespace ncm::kernels
