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

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ncm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Kronecker product, left factor major: row (i_a * rows_b + i_b), same for
/// columns.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// max(||m* m - I||_F, ||m m* - I||_F). Throws ShapeError if m is not square.
double unitarity_defect(const ComplexMatrix& m);

/// Unitary whose first column is v / ||v||. Columns 2..n come from the
/// Householder reflector that maps e1 to the phase-normalised v, so they do
/// not depend on the phase of v's pivot.
ComplexMatrix orthonormal_completion(const ComplexVector& v);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, unitary
};

/// Cyclic complex Jacobi. Throws DomainError if m is not Hermitian to
/// 1e-8 relative Frobenius error.
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Descending singular values, min(rows, cols) of them.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Number of columns minus numerical rank. A singular value counts as zero
/// when it is <= tol * sigma_max (or <= tol when sigma_max < tol).
std::size_t kernel_dimension(const ComplexMatrix& m, double tol);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

bool all_finite(const ComplexMatrix& m);

/// Column-major stacking of a square matrix, and its inverse.
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n);

}  // namespace ncm
