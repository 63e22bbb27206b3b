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

#include <cmath>
#include <numbers>
#include <random>

#include "ncm/linalg.hpp"
#include "ncm/model.hpp"

namespace ncm::testing {

inline InteractionModel model_of(const std::string& generator, Dims dims = {2, 2, 2}) {
  return generate(GeneratorSpec::parse(generator), dims);
}

inline InteractionModel random_model(std::uint64_t seed, Dims dims = {2, 2, 2}) {
  return model_of("random:" + std::to_string(seed), dims);
}

inline ComplexMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

inline ComplexVector random_unit(Eigen::Index n, std::mt19937_64& rng) {
  ComplexVector v = random_matrix(n, 1, rng).col(0);
  return v / v.norm();
}

inline ComplexVector basis(Eigen::Index n, Eigen::Index i) {
  ComplexVector v = ComplexVector::Zero(n);
  v(i) = 1.0;
  return v;
}

/// SWAP on C^n (x) C^n in the H-major product basis.
inline ComplexMatrix swap_matrix(Eigen::Index n) {
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) s(b * n + a, a * n + b) = 1.0;
  }
  return s;
}

}  // namespace ncm::testing
