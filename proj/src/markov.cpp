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

#include "ncm/markov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ncm/error.hpp"
#include "ncm/transfer.hpp"

namespace ncm {
namespace {

ComplexMatrix superoperator_of(const std::vector<ComplexMatrix>& kraus, Eigen::Index n) {
  // vec(A* X A) = (A^T (x) A*) vec(X) for column-major vec.
  ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& a : kraus) s += tensor_product(ComplexMatrix(a.transpose()), ComplexMatrix(a.adjoint()));
  return s;
}

// Iterates are Hermitian in exact arithmetic; dropping the rounding-level
// skew part keeps differences like I - G exactly Hermitian near zero.
ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double hermitian_min_eigenvalue(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return hermitian_eig(m).values.front();
}

}  // namespace

ComplexMatrix transition_apply(const Colligation& col, const ComplexMatrix& x) {
  if (x.rows() != col.dim_h || x.cols() != col.dim_h) throw ShapeError("transition_apply: X must be dim_h x dim_h");
  ComplexMatrix out = ComplexMatrix::Zero(col.dim_h, col.dim_h);
  for (const auto& a : col.a) out += a.adjoint() * x * a;
  return out;
}

TransitionSuperoperator transition_superoperator(const Colligation& col) {
  return {col.dim_h, superoperator_of(col.a, col.dim_h)};
}

std::size_t fixed_space_dim(const TransitionSuperoperator& sup, double tol) {
  const Eigen::Index n = sup.zhat.rows();
  return kernel_dimension(sup.zhat - ComplexMatrix::Identity(n, n), tol);
}

ComplexMatrix reduced_transition_apply(const ReducedColligation& red, const ComplexMatrix& x) {
  if (x.rows() != red.dim_h0 || x.cols() != red.dim_h0) throw ShapeError("reduced_transition_apply: bad shape");
  ComplexMatrix out = ComplexMatrix::Zero(red.dim_h0, red.dim_h0);
  for (const auto& a : red.a) out += a.adjoint() * x * a;
  return out;
}

ComplexMatrix reduced_superoperator(const ReducedColligation& red) {
  return superoperator_of(red.a, red.dim_h0);
}

double reduced_tail_norm(const ReducedColligation& red, int n) {
  if (red.dim_h0 == 0) return 0.0;
  ComplexMatrix x = ComplexMatrix::Identity(red.dim_h0, red.dim_h0);
  for (int i = 0; i < n; ++i) x = reduced_transition_apply(red, x);
  return operator_norm(x);
}

IterationResult observability_gramian(const ReducedColligation& red, double tol, std::size_t max_iter) {
  const ComplexMatrix source = red.c.adjoint() * red.c;
  IterationResult r;
  r.value = ComplexMatrix::Zero(red.dim_h0, red.dim_h0);
  if (red.dim_h0 == 0) {
    r.converged = true;
    return r;
  }
  while (r.iterations < max_iter) {
    ComplexMatrix next = source + reduced_transition_apply(red, r.value);
    next = hermitian_part(next);
    const double step = (next - r.value).norm();
    r.value = std::move(next);
    ++r.iterations;
    if (step < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

IterationResult x_fixed_point(const Colligation& col, double tol, std::size_t max_iter) {
  const ComplexVector omega = col.omega_h / col.omega_h.norm();
  IterationResult r;
  r.value = omega * omega.adjoint();
  while (r.iterations < max_iter) {
    ComplexMatrix next = hermitian_part(transition_apply(col, r.value));
    const double step = (next - r.value).norm();
    r.value = std::move(next);
    ++r.iterations;
    if (step < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

double stability_radius(const ReducedColligation& red, int n_max) {
  if (n_max < 4) throw ShapeError("stability_radius: n_max must be >= 4");
  if (red.dim_h0 == 0) return 0.0;
  const ComplexVector id = vec(ComplexMatrix::Identity(red.dim_h0, red.dim_h0));
  ComplexMatrix power = reduced_superoperator(red);
  double radius = 0.0;
  for (long exponent = 2; exponent <= n_max; exponent *= 2) {
    power = power * power;
    const double norm = operator_norm(unvec(power * id, red.dim_h0));
    radius = norm > 0.0 ? std::pow(norm, 1.0 / static_cast<double>(exponent)) : 0.0;
  }
  return radius;
}

DiagnosticsReport diagnose(const InteractionModel& model, const DiagnoseOptions& options) {
  const Tolerances& tol = options.tol;
  const BasisFrame frame = canonical_frame(model);
  const Colligation col = extract_colligation(model, frame, tol);
  const ReducedColligation red = reduce_colligation(col);

  DiagnosticsReport rep;

  // (c) ergodicity from the kernel of zhat - I; a singular value between the
  // rank threshold and the verdict threshold makes the call indeterminate.
  const TransitionSuperoperator sup = transition_superoperator(col);
  const Eigen::Index n2 = sup.zhat.rows();
  const ComplexMatrix shifted = sup.zhat - ComplexMatrix::Identity(n2, n2);
  rep.fixed_space_dim = kernel_dimension(shifted, tol.rank);
  rep.ergodic = rep.fixed_space_dim == 1;
  {
    const auto sv = singular_values(shifted);
    const double largest = sv.empty() ? 0.0 : sv.front();
    if (largest >= tol.rank) {
      const bool boundary = std::any_of(sv.begin(), sv.end(), [&](double s) {
        return s > tol.rank * largest && s <= tol.verdict * largest;
      });
      if (boundary) rep.indeterminate.emplace_back("ergodic");
    }
  }

  // (a)/(b) observability through the Gramian.
  const IterationResult gram = observability_gramian(red, tol.iteration, tol.max_iterations);
  rep.gramian = gram.value;
  rep.gramian_converged = gram.converged;
  if (red.dim_h0 == 0) {
    rep.gramian_defect = 0.0;
    rep.gramian_min_eigenvalue = 1.0;
    rep.observable = true;
  } else {
    const ComplexMatrix gap = ComplexMatrix::Identity(red.dim_h0, red.dim_h0) - gram.value;
    const auto eig = hermitian_eig(gap);
    rep.gramian_defect = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    rep.gramian_min_eigenvalue = hermitian_min_eigenvalue(gram.value);
    rep.observable = rep.gramian_defect <= tol.verdict;
    const bool clear = gram.converged &&
                       (rep.gramian_defect <= tol.verdict || rep.gramian_defect >= tol.verdict_reject);
    if (!clear) rep.indeterminate.emplace_back("observable");
  }

  // (c') stability of the reduced tuple.
  rep.stability_radius_estimate = stability_radius(red, tol.radius_power);
  rep.stable = rep.stability_radius_estimate < 1.0 - tol.verdict;
  if (!rep.stable && rep.stability_radius_estimate <= 1.0 - tol.unstable_margin) {
    rep.indeterminate.emplace_back("stable");
  }

  // Fixed point of Z^n(p); its compression to H° must be the Gramian.
  const IterationResult xfix = x_fixed_point(col, tol.iteration, tol.max_iterations);
  rep.xfixed = xfix.value;
  rep.xfixed_converged = xfix.converged;
  if (red.dim_h0 > 0) {
    const ComplexMatrix compressed = red.embedding.adjoint() * xfix.value * red.embedding;
    rep.gramian_fixed_point_discrepancy = operator_norm(compressed - gram.value);
  }

  // (e) inner defects against the tail bound.
  std::vector<int> lengths = options.inner_lengths;
  std::sort(lengths.begin(), lengths.end());
  lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
  const TransferSeries ser = series(col, lengths.empty() ? 0 : lengths.back());
  for (int n : lengths) {
    rep.inner_defects.push_back({n, inner_defect(ser, n), reduced_tail_norm(red, n)});
  }

  auto determinate = [&rep](const char* name) {
    return std::find(rep.indeterminate.begin(), rep.indeterminate.end(), name) == rep.indeterminate.end();
  };
  std::vector<bool> verdicts;
  if (determinate("ergodic")) verdicts.push_back(rep.ergodic);
  if (determinate("observable")) verdicts.push_back(rep.observable);
  if (determinate("stable")) verdicts.push_back(rep.stable);
  bool agree = std::adjacent_find(verdicts.begin(), verdicts.end(), std::not_equal_to<>()) == verdicts.end();

  if (rep.indeterminate.empty() && rep.ergodic && rep.observable && rep.stable && model.dim_p >= 2) {
    double previous = 1.0 + tol.tail_bound;
    for (const auto& e : rep.inner_defects) {
      if (e.defect > e.tail_bound + tol.tail_bound || e.defect > previous + tol.tail_bound) agree = false;
      previous = e.defect;
    }
  }
  if (rep.converged() && rep.gramian_fixed_point_discrepancy > tol.gramian_fixed_point) agree = false;
  rep.consistent = agree;
  return rep;
}

}  // namespace ncm
