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

#include <vector>

#include "ncm/linalg.hpp"
#include "ncm/model.hpp"
#include "ncm/words.hpp"

namespace ncm {

/// Coefficients Theta(w) : U_in -> Y of the transfer function for every word
/// of length <= max_len. Theta(empty) = D; for stored letters (a_1..a_n),
/// Theta(w) = C A_{a_n} ... A_{a_2} B_{a_1}.
struct TransferSeries {
  int d = 0;
  int max_len = 0;
  int dim_u = 0;
  int dim_y = 0;
  WordIndex index{1, 0};
  std::vector<ComplexMatrix> coeffs;  // at index.index_of(w)

  const ComplexMatrix& at(const Word& w) const { return coeffs[index.index_of(w)]; }
};

/// A vector per word of length <= max_len (u, x or y of the linear system).
struct SignalSequence {
  int d = 0;
  int max_len = 0;
  int dim = 0;
  std::vector<ComplexVector> values;  // at WordIndex(d, max_len).index_of(w)

  static SignalSequence zeros(int d, int max_len, int dim);
};

ComplexMatrix coefficient(const Colligation& col, const Word& w);

TransferSeries series(const Colligation& col, int max_len);

struct IoResult {
  SignalSequence x;
  SignalSequence y;
};

/// Runs x(w ++ j) = A_j x(w) + B_j u(w), y(w) = C x(w) + D u(w) from
/// x(empty) = x0 over all words of u's index set.
IoResult io_map(const Colligation& col, const SignalSequence& u, const ComplexVector& x0);

/// Word-Toeplitz truncation of the multi-analytic operator over words of
/// length <= n: block (c, b) is Theta(a) when c = b ++ a, zero otherwise.
/// Throws GuardError past kMaxToeplitzDim rows or columns.
ComplexMatrix toeplitz(const TransferSeries& series, int n);

/// || I - sum_{|w| <= n} Theta(w)* Theta(w) ||.
double inner_defect(const TransferSeries& series, int n);

/// || Theta(w) eta ||^2.
double record_probability(const TransferSeries& series, const ComplexVector& eta, const Word& w);

}  // namespace ncm
