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

#include "ncm/model.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ncm/error.hpp"

namespace ncm {
namespace {

ComplexMatrix as_row(const ComplexVector& v) { return v.adjoint(); }

// I_n (x) <v|
ComplexMatrix slot_bra(int n, const ComplexVector& v) {
  return tensor_product(ComplexMatrix::Identity(n, n), as_row(v));
}

// I_n (x) |v>
ComplexMatrix slot_ket(int n, const ComplexMatrix& v) {
  return tensor_product(ComplexMatrix::Identity(n, n), v);
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex diag = r(i, i);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(i) *= diag / mag;
  }
  return q;
}

ComplexVector unit_vector(Eigen::Index n, std::mt19937_64& rng) {
  ComplexVector v = gaussian_matrix(n, 1, rng).col(0);
  return v / v.norm();
}

ComplexVector basis_vector(int n, int i) {
  ComplexVector e = ComplexVector::Zero(n);
  e(i) = 1.0;
  return e;
}

ComplexMatrix swap_matrix(int n) {
  const int dim = n * n;
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) s(b * n + a, a * n + b) = 1.0;
  }
  return s;
}

}  // namespace

ValidationReport validate(const InteractionModel& m, const Tolerances& tol) {
  if (m.dim_h < 1 || m.dim_k < 1 || m.dim_p < 1) {
    throw ShapeError("dimensions must be >= 1");
  }
  if (m.dim_k != m.dim_p) {
    throw ShapeError("dim_k (" + std::to_string(m.dim_k) + ") != dim_p (" +
                     std::to_string(m.dim_p) + "): U cannot be unitary");
  }
  const Eigen::Index out_dim = Eigen::Index{m.dim_h} * m.dim_p;
  const Eigen::Index in_dim = Eigen::Index{m.dim_h} * m.dim_k;
  if (m.u.rows() != out_dim || m.u.cols() != in_dim) {
    throw ShapeError("u must be " + std::to_string(out_dim) + "x" + std::to_string(in_dim));
  }
  if (m.omega_h.size() != m.dim_h || m.omega_k.size() != m.dim_k ||
      m.omega_p.size() != m.dim_p) {
    throw ShapeError("vacuum vector length does not match its dimension");
  }
  if (!all_finite(m.u) || !all_finite(m.omega_h) || !all_finite(m.omega_k) ||
      !all_finite(m.omega_p)) {
    throw ShapeError("model contains non-finite entries");
  }

  ValidationReport report;
  auto check = [&report, &tol](const char* name, double defect) {
    if (!(defect <= tol.validation)) report.push_back({name, defect});
  };
  check("unitarity", unitarity_defect(m.u));
  check("vacuum_condition", (m.u * m.vacuum_in() - m.vacuum_out()).norm());
  check("omega_h_norm", std::abs(m.omega_h.norm() - 1.0));
  check("omega_k_norm", std::abs(m.omega_k.norm() - 1.0));
  check("omega_p_norm", std::abs(m.omega_p.norm() - 1.0));
  return report;
}

void require_valid(const InteractionModel& model, const Tolerances& tol) {
  const auto report = validate(model, tol);
  if (report.empty()) return;
  std::ostringstream msg;
  msg << "invalid interaction model:";
  for (const auto& v : report) msg << ' ' << v.name << '=' << v.defect;
  throw DomainError(msg.str());
}

BasisFrame canonical_frame(const InteractionModel& model) {
  return {orthonormal_completion(model.omega_k), orthonormal_completion(model.omega_p)};
}

Colligation extract_colligation(const InteractionModel& model, const BasisFrame& frame,
                                const Tolerances& tol) {
  require_valid(model, tol);
  const int h = model.dim_h;
  const int k = model.dim_k;
  const int p = model.dim_p;

  Colligation col;
  col.d = p;
  col.dim_h = h;
  col.dim_u = h * (k - 1);
  col.dim_y = p - 1;
  col.omega_h = model.omega_h;

  // Columns of U restricted to H (x) omega_k and to the input space.
  const ComplexMatrix from_state = model.u * slot_ket(h, frame.k_basis.col(0));
  const ComplexMatrix from_input = model.u * slot_ket(h, frame.k_basis.rightCols(k - 1));

  col.a.reserve(static_cast<std::size_t>(p));
  col.b.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) {
    const ComplexMatrix bra = slot_bra(h, frame.p_basis.col(j));
    col.a.push_back(bra * from_state);
    col.b.push_back(bra * from_input);
  }

  // <omega_h| (x) [epsilon_2 ... epsilon_d]^*
  const ComplexMatrix y_bra =
      tensor_product(ComplexMatrix(as_row(model.omega_h)),
                     ComplexMatrix(frame.p_basis.rightCols(p - 1).adjoint()));
  col.c = y_bra * from_state;
  col.dmat = y_bra * from_input;
  return col;
}

ComplexMatrix stacked_ab(const Colligation& col) {
  ComplexMatrix out(Eigen::Index{col.d} * col.dim_h, col.dim_h + col.dim_u);
  for (int j = 0; j < col.d; ++j) {
    out.block(Eigen::Index{j} * col.dim_h, 0, col.dim_h, col.dim_h) = col.a[static_cast<std::size_t>(j)];
    out.block(Eigen::Index{j} * col.dim_h, col.dim_h, col.dim_h, col.dim_u) =
        col.b[static_cast<std::size_t>(j)];
  }
  return out;
}

ReducedColligation reduce_colligation(const Colligation& col) {
  ReducedColligation red;
  red.d = col.d;
  red.dim_h0 = col.dim_h - 1;
  red.dim_u = col.dim_u;
  red.dim_y = col.dim_y;
  red.embedding = orthonormal_completion(col.omega_h).rightCols(red.dim_h0);
  const ComplexMatrix& e = red.embedding;
  for (int j = 0; j < col.d; ++j) {
    const auto js = static_cast<std::size_t>(j);
    red.a.push_back(e.adjoint() * col.a[js] * e);
    red.b.push_back(e.adjoint() * col.b[js]);
  }
  red.c = col.c * e;
  red.dmat = col.dmat;
  return red;
}

ComplexMatrix stacked(const ReducedColligation& red) {
  const Eigen::Index h0 = red.dim_h0;
  ComplexMatrix out(Eigen::Index{red.d} * h0 + red.dim_y, h0 + red.dim_u);
  for (int j = 0; j < red.d; ++j) {
    const auto js = static_cast<std::size_t>(j);
    out.block(j * h0, 0, h0, h0) = red.a[js];
    out.block(j * h0, h0, h0, red.dim_u) = red.b[js];
  }
  out.block(Eigen::Index{red.d} * h0, 0, red.dim_y, h0) = red.c;
  out.block(Eigen::Index{red.d} * h0, h0, red.dim_y, red.dim_u) = red.dmat;
  return out;
}

GeneratorSpec GeneratorSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  GeneratorSpec spec;
  try {
    if (kind == "identity" && arg.empty()) {
      spec.kind = GeneratorKind::kIdentity;
    } else if (kind == "swap" && arg.empty()) {
      spec.kind = GeneratorKind::kSwap;
    } else if (kind == "partial_swap" && !arg.empty()) {
      spec.kind = GeneratorKind::kPartialSwap;
      std::size_t used = 0;
      spec.theta = std::stod(arg, &used);
      if (used != arg.size()) throw ShapeError("trailing characters");
    } else if (kind == "random" && !arg.empty()) {
      spec.kind = GeneratorKind::kRandom;
      std::size_t used = 0;
      spec.seed = std::stoull(arg, &used);
      if (used != arg.size()) throw ShapeError("trailing characters");
    } else {
      throw ShapeError("unknown kind");
    }
  } catch (const std::exception&) {
    throw ShapeError("bad generator '" + text +
                     "' (expected identity | swap | partial_swap:THETA | random:SEED)");
  }
  return spec;
}

std::string GeneratorSpec::to_string() const {
  switch (kind) {
    case GeneratorKind::kIdentity:
      return "identity";
    case GeneratorKind::kSwap:
      return "swap";
    case GeneratorKind::kPartialSwap: {
      std::ostringstream s;
      s.precision(17);
      s << "partial_swap:" << theta;
      return s.str();
    }
    case GeneratorKind::kRandom:
      return "random:" + std::to_string(seed);
  }
  return "";
}

InteractionModel generate(const GeneratorSpec& spec, const Dims& dims) {
  if (dims.h < 1 || dims.k < 1 || dims.p < 1) throw ShapeError("dimensions must be >= 1");
  if (dims.k != dims.p) throw ShapeError("generate: dim_k must equal dim_p");
  InteractionModel m;
  m.dim_h = dims.h;
  m.dim_k = dims.k;
  m.dim_p = dims.p;
  const int in_dim = dims.h * dims.k;

  switch (spec.kind) {
    case GeneratorKind::kIdentity:
      m.u = ComplexMatrix::Identity(in_dim, in_dim);
      m.omega_h = basis_vector(dims.h, 0);
      m.omega_k = basis_vector(dims.k, 0);
      m.omega_p = basis_vector(dims.p, 0);
      break;
    case GeneratorKind::kSwap:
    case GeneratorKind::kPartialSwap: {
      if (dims.h != dims.k) throw ShapeError("swap generators need dim_h == dim_k");
      const ComplexMatrix s = swap_matrix(dims.h);
      if (spec.kind == GeneratorKind::kSwap) {
        m.u = s;
      } else {
        const double t = spec.theta;
        // e^{-i t} (cos t I + i sin t SWAP) fixes e1 (x) e1 exactly.
        m.u = std::polar(1.0, -t) *
              (std::cos(t) * ComplexMatrix::Identity(in_dim, in_dim) + Complex(0.0, std::sin(t)) * s);
      }
      m.omega_h = basis_vector(dims.h, 0);
      m.omega_k = basis_vector(dims.k, 0);
      m.omega_p = basis_vector(dims.p, 0);
      break;
    }
    case GeneratorKind::kRandom: {
      std::mt19937_64 rng(spec.seed);
      m.omega_h = unit_vector(dims.h, rng);
      m.omega_k = unit_vector(dims.k, rng);
      m.omega_p = unit_vector(dims.p, rng);
      const ComplexMatrix w_in = orthonormal_completion(m.vacuum_in());
      const ComplexMatrix w_out = orthonormal_completion(m.vacuum_out());
      ComplexMatrix inner = ComplexMatrix::Zero(in_dim, in_dim);
      inner(0, 0) = 1.0;
      inner.bottomRightCorner(in_dim - 1, in_dim - 1) = haar_unitary(in_dim - 1, rng);
      m.u = w_out * inner * w_in.adjoint();
      break;
    }
  }
  return m;
}

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(n, rng);
}

ComplexVector random_unit_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return unit_vector(n, rng);
}

}  // namespace ncm
