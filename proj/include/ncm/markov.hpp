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

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ncm/linalg.hpp"
#include "ncm/model.hpp"
#include "ncm/tolerances.hpp"

namespace ncm {

/// Z(X) = sum_j A_j* X A_j.
ComplexMatrix transition_apply(const Colligation& col, const ComplexMatrix& x);

/// Matrix of Z on column-major vec(X): zhat * vec(X) = vec(Z(X)).
struct TransitionSuperoperator {
  int dim_h = 0;
  ComplexMatrix zhat;
};

TransitionSuperoperator transition_superoperator(const Colligation& col);

/// kernel_dimension(zhat - I, tol).
std::size_t fixed_space_dim(const TransitionSuperoperator& sup, double tol);

/// Phi°(X) = sum_j A°_j* X A°_j on B(H°), and its superoperator matrix.
ComplexMatrix reduced_transition_apply(const ReducedColligation& red, const ComplexMatrix& x);
ComplexMatrix reduced_superoperator(const ReducedColligation& red);

/// || (Phi°)^n (I) ||, by n direct applications.
double reduced_tail_norm(const ReducedColligation& red, int n);

struct IterationResult {
  ComplexMatrix value;
  bool converged = false;
  std::size_t iterations = 0;
};

/// G_0 = 0, G_{n+1} = C°* C° + sum_j A°_j* G_n A°_j, stopped when
/// ||G_{n+1} - G_n||_F < tol. The limit is the quadratic form of the
/// observability operator on H°.
IterationResult observability_gramian(const ReducedColligation& red, double tol, std::size_t max_iter);

/// Increasing limit of Z^n(p), p the projection onto the vacuum line.
IterationResult x_fixed_point(const Colligation& col, double tol, std::size_t max_iter);

/// ||(Phi°)^(2^m)(I)||^(1/2^m) for the largest 2^m <= n_max, by repeated
/// squaring of the superoperator matrix. 0 when H° is trivial.
double stability_radius(const ReducedColligation& red, int n_max);

struct InnerDefectEntry {
  int n = 0;
  double defect = 0.0;
  double tail_bound = 0.0;  // ||(Phi°)^n (I)||
};

struct DiagnosticsReport {
  std::size_t fixed_space_dim = 0;
  bool ergodic = false;
  ComplexMatrix gramian;
  double gramian_defect = 0.0;
  double gramian_min_eigenvalue = 0.0;
  bool observable = false;
  double stability_radius_estimate = 0.0;
  bool stable = false;
  std::vector<InnerDefectEntry> inner_defects;
  bool consistent = false;
  ComplexMatrix xfixed;

  bool gramian_converged = false;
  bool xfixed_converged = false;
  double gramian_fixed_point_discrepancy = 0.0;
  // Names of verdicts that fell in a boundary band ("ergodic", ...).
  std::vector<std::string> indeterminate;

  bool converged() const { return gramian_converged && xfixed_converged; }
};

struct DiagnoseOptions {
  Tolerances tol;
  std::vector<int> inner_lengths{2, 4, 8};
};

/// Runs every check above on a valid model and cross-checks the verdicts:
/// ergodic (fixed space of Z), observable (Gramian = I) and stable (radius
/// < 1) must agree; when all hold, the inner defect must be nonincreasing
/// and under the tail bound. Verdicts in a boundary band are listed in
/// `indeterminate` and left out of the agreement check.
DiagnosticsReport diagnose(const InteractionModel& model, const DiagnoseOptions& options = {});

}  // namespace ncm
