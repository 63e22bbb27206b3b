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

#include "ncm/linalg.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ncm/error.hpp"
#include "support.hpp"

namespace ncm {
namespace {

using testing::random_hermitian;
using testing::random_matrix;
using testing::random_unit;

// Textbook Householder reflector I - 2 w w* / |w|^2 with w = e1 - u, where u
// is v rotated so its pivot is real and nonnegative; first column then v.
ComplexMatrix householder_oracle(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  const Complex phase = std::abs(v(0)) > 0 ? v(0) / std::abs(v(0)) : Complex(1.0);
  const ComplexVector u = v / phase;
  ComplexVector w = -u;
  w(0) += 1.0;
  ComplexMatrix h = ComplexMatrix::Identity(n, n);
  if (w.norm() > 1e-300) h -= 2.0 * w * w.adjoint() / w.squaredNorm();
  h.col(0) = v;
  return h;
}

TEST(TensorProduct, IdentityTimesIdentity) {
  EXPECT_EQ(tensor_product(ComplexMatrix(ComplexMatrix::Identity(2, 2)), ComplexMatrix(ComplexMatrix::Identity(2, 2))),
            ComplexMatrix(ComplexMatrix::Identity(4, 4)));
}

TEST(TensorProduct, ScalarFactor) {
  std::mt19937_64 rng(1);
  const ComplexMatrix b = random_matrix(3, 2, rng);
  ComplexMatrix c(1, 1);
  c(0, 0) = Complex(0.5, -2.0);
  EXPECT_EQ(tensor_product(c, b), ComplexMatrix(c(0, 0) * b));
}

TEST(TensorProduct, LeftFactorMajorIndexing) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  ComplexMatrix two(1, 1);
  two(0, 0) = 2.0;
  const ComplexMatrix k = tensor_product(x, two);
  EXPECT_EQ(k(0, 1), Complex(2.0));
  std::mt19937_64 rng(2);
  const ComplexMatrix a = random_matrix(2, 3, rng);
  const ComplexMatrix b = random_matrix(3, 2, rng);
  const ComplexMatrix ab = tensor_product(a, b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 2; ++s) EXPECT_EQ(ab(i * 3 + r, j * 2 + s), a(i, j) * b(r, s));
}

TEST(TensorProduct, AssociativeAndMixedProduct) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(2, 2, rng);
    const ComplexMatrix c = random_matrix(2, 2, rng), d = random_matrix(2, 2, rng);
    const ComplexMatrix left = tensor_product(tensor_product(a, b), c);
    EXPECT_LE((left - tensor_product(a, tensor_product(b, c))).norm(), 1e-15 * left.norm());
    const ComplexMatrix lhs = tensor_product(a, b) * tensor_product(c, d);
    const ComplexMatrix rhs = tensor_product(ComplexMatrix(a * c), ComplexMatrix(b * d));
    EXPECT_LE((lhs - rhs).norm(), 1e-12 * rhs.norm());
  }
}

TEST(TensorProduct, AssociativeExactlyOnGaussianIntegers) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> digit(-4, 4);
  auto small = [&]() {
    ComplexMatrix m(2, 2);
    for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(digit(rng), digit(rng));
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = small(), b = small(), c = small();
    EXPECT_EQ(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c)));
  }
}

TEST(UnitarityDefect, Examples) {
  EXPECT_EQ(unitarity_defect(ComplexMatrix::Identity(3, 3)), 0.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  EXPECT_NEAR(unitarity_defect(d), 3.0, 1e-15);
  ComplexMatrix perm = ComplexMatrix::Zero(3, 3);
  perm(0, 2) = perm(1, 0) = perm(2, 1) = 1.0;
  EXPECT_EQ(unitarity_defect(perm), 0.0);
  EXPECT_THROW(unitarity_defect(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST(OrthonormalCompletion, BasisVectorGivesIdentity) {
  EXPECT_LE((orthonormal_completion(testing::basis(2, 0)) - ComplexMatrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(OrthonormalCompletion, HandHouseholderOnDiagonalVector) {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const ComplexMatrix q = orthonormal_completion(v);
  EXPECT_EQ(q.col(0), v);
  EXPECT_NEAR(std::abs(q(0, 1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q(1, 1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(OrthonormalCompletion, MatchesTextbookReflector) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const ComplexVector v = random_unit(n, rng);
      const ComplexMatrix q = orthonormal_completion(v);
      EXPECT_EQ(q.col(0), v);
      EXPECT_LE(unitarity_defect(q), 1e-12);
      EXPECT_LE((q - householder_oracle(v)).norm(), 1e-12);
    }
  }
}

TEST(OrthonormalCompletion, RejectsZero) {
  EXPECT_THROW(orthonormal_completion(ComplexVector::Zero(3)), DomainError);
}

TEST(HermitianEig, Examples) {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  auto e = hermitian_eig(d);
  EXPECT_NEAR(e.values[0], 1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 3.0, 1e-15);

  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  e = hermitian_eig(x);
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);

  e = hermitian_eig(ComplexMatrix::Zero(4, 4));
  for (double v : e.values) EXPECT_EQ(v, 0.0);
}

TEST(HermitianEig, ResidualAndEigenOracle) {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3, 5, 8, 16, 33, 64}) {
    const ComplexMatrix m = random_hermitian(n, rng);
    const auto e = hermitian_eig(m);
    ASSERT_EQ(e.values.size(), static_cast<std::size_t>(n));
    EXPECT_LE(unitarity_defect(e.vectors), 1e-10);
    for (int j = 0; j < n; ++j) {
      const double residual = (m * e.vectors.col(j) - e.values[j] * e.vectors.col(j)).norm();
      EXPECT_LE(residual, 1e-10 * m.norm()) << "n=" << n << " column " << j;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> oracle(m);
    for (int j = 0; j < n; ++j) EXPECT_NEAR(e.values[j], oracle.eigenvalues()(j), 1e-10 * m.norm());
  }
}

TEST(HermitianEig, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  EXPECT_THROW(hermitian_eig(m), DomainError);
}

TEST(SingularValues, Examples) {
  for (double s : singular_values(ComplexMatrix::Identity(4, 4))) EXPECT_NEAR(s, 1.0, 1e-14);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  auto s = singular_values(d);
  EXPECT_NEAR(s[0], 2.0, 1e-14);
  EXPECT_NEAR(s[1], 0.0, 1e-14);
  ComplexMatrix m(2, 2);
  m << 1, 1, 0, 0;
  s = singular_values(m);
  EXPECT_NEAR(s[0], std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s[1], 0.0, 1e-14);
}

TEST(SingularValues, UnitaryAndJacobiSvdOracle) {
  std::mt19937_64 rng(6);
  for (double s : singular_values(random_unitary(7, 11))) EXPECT_NEAR(s, 1.0, 1e-10);
  for (auto [r, c] : {std::pair{3, 3}, {2, 5}, {6, 2}, {9, 9}}) {
    const ComplexMatrix m = random_matrix(r, c, rng);
    const auto s = singular_values(m);
    Eigen::JacobiSVD<ComplexMatrix> oracle(m);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(std::min(r, c)));
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_NEAR(s[i], oracle.singularValues()(static_cast<Eigen::Index>(i)), 1e-12 * m.norm());
    }
    EXPECT_NEAR(operator_norm(m), oracle.singularValues()(0), 1e-12 * m.norm());
  }
}

TEST(SingularValues, ExactZeroStaysSmall) {
  // Rank-deficient product: the zero singular value must sit far below the
  // relative rank threshold.
  std::mt19937_64 rng(7);
  const ComplexMatrix m = random_matrix(5, 3, rng) * random_matrix(3, 5, rng);
  const auto s = singular_values(m);
  EXPECT_LE(s[3], 1e-13 * s[0]);
  EXPECT_EQ(kernel_dimension(m, 1e-9), 2u);
}

TEST(KernelDimension, Examples) {
  EXPECT_EQ(kernel_dimension(ComplexMatrix::Zero(3, 3), 1e-9), 3u);
  const ComplexMatrix near = ComplexMatrix::Identity(3, 3) - ComplexMatrix::Identity(3, 3) * 0.999999;
  EXPECT_EQ(kernel_dimension(near, 1e-9), 0u);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  EXPECT_EQ(kernel_dimension(d, 1e-9), 1u);
}

TEST(Vec, ColumnMajorRoundTrip) {
  std::mt19937_64 rng(8);
  const ComplexMatrix x = random_matrix(3, 3, rng);
  const ComplexVector v = vec(x);
  EXPECT_EQ(v(1), x(1, 0));
  EXPECT_EQ(v(3), x(0, 1));
  EXPECT_EQ(unvec(v, 3), x);
}

TEST(AllFinite, DetectsNan) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_TRUE(all_finite(m));
  m(1, 0) = Complex(0.0, std::nan(""));
  EXPECT_FALSE(all_finite(m));
}

}  // namespace
}  // namespace ncm
