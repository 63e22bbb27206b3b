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

#include <cstdint>
#include <string>
#include <vector>

#include "ncm/linalg.hpp"
#include "ncm/tolerances.hpp"

namespace ncm {

/// A unitary U : H (x) K -> H (x) P together with unit vacuum vectors such
/// that U (omega_h (x) omega_k) = omega_h (x) omega_p. Product-basis index on
/// both sides is i_H * dim + i_slot (H major).
struct InteractionModel {
  int dim_h = 0;
  int dim_k = 0;
  int dim_p = 0;
  ComplexMatrix u;  // (dim_h * dim_p) x (dim_h * dim_k)
  ComplexVector omega_h;
  ComplexVector omega_k;
  ComplexVector omega_p;

  ComplexVector vacuum_in() const { return tensor_product(omega_h, omega_k); }
  ComplexVector vacuum_out() const { return tensor_product(omega_h, omega_p); }
};

struct Violation {
  std::string name;
  double defect = 0.0;
};
using ValidationReport = std::vector<Violation>;

/// Throws ShapeError on inconsistent shapes (including dim_k != dim_p).
/// Returns the list of violated axioms; empty means valid.
ValidationReport validate(const InteractionModel& model, const Tolerances& tol = {});

/// Throws DomainError listing the violations when the model is invalid.
void require_valid(const InteractionModel& model, const Tolerances& tol = {});

/// Orthonormal bases of K and P whose first columns are the vacua. Column j
/// of p_basis is epsilon_{j+1}.
struct BasisFrame {
  ComplexMatrix k_basis;
  ComplexMatrix p_basis;
};

BasisFrame canonical_frame(const InteractionModel& model);

/// Blocks of U relative to H (+) U_in -> (+)_j H and the output space Y.
///
/// Input-space coordinate of e_{i_H} (x) k_basis column m (m >= 1, 0-based)
/// is i_H * (dim_k - 1) + (m - 1). Output coordinate y (0-based) is
/// epsilon_{y+2}, i.e. p_basis column y + 1.
struct Colligation {
  int d = 0;
  int dim_h = 0;
  int dim_u = 0;
  int dim_y = 0;
  std::vector<ComplexMatrix> a;  // d of dim_h x dim_h
  std::vector<ComplexMatrix> b;  // d of dim_h x dim_u
  ComplexMatrix c;               // dim_y x dim_h
  ComplexMatrix dmat;            // dim_y x dim_u
  ComplexVector omega_h;
};

/// Validates the model first (DomainError when invalid).
Colligation extract_colligation(const InteractionModel& model, const BasisFrame& frame,
                                const Tolerances& tol = {});

/// [A_1 B_1; ...; A_d B_d] : H (+) U_in -> (+)_j H. Unitary for valid models.
ComplexMatrix stacked_ab(const Colligation& col);

/// Compression of a colligation to H° = H minus the vacuum line.
struct ReducedColligation {
  int d = 0;
  int dim_h0 = 0;
  int dim_u = 0;
  int dim_y = 0;
  std::vector<ComplexMatrix> a;  // d of dim_h0 x dim_h0
  std::vector<ComplexMatrix> b;  // d of dim_h0 x dim_u
  ComplexMatrix c;               // dim_y x dim_h0
  ComplexMatrix dmat;            // dim_y x dim_u
  ComplexMatrix embedding;       // dim_h x dim_h0, isometric, range = H°
};

ReducedColligation reduce_colligation(const Colligation& col);

/// [A°_j B°_j]_j stacked over [C° D] : H° (+) U_in -> (+)_j H° (+) Y.
ComplexMatrix stacked(const ReducedColligation& red);

struct Dims {
  int h = 0;
  int k = 0;
  int p = 0;
};

enum class GeneratorKind { kIdentity, kSwap, kPartialSwap, kRandom };

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::kIdentity;
  double theta = 0.0;       // partial_swap angle
  std::uint64_t seed = 0;   // random

  /// "identity", "swap", "partial_swap:THETA", "random:SEED".
  static GeneratorSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Deterministic test-corpus models. Throws ShapeError on incompatible dims.
InteractionModel generate(const GeneratorSpec& spec, const Dims& dims);

/// Haar-distributed n x n unitary from a seeded Gaussian QR.
ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed);
ComplexVector random_unit_vector(Eigen::Index n, std::uint64_t seed);

}  // namespace ncm
