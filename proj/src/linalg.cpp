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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ncm/error.hpp"

namespace ncm {

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double unitarity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("unitarity_defect: matrix is " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", not square");
  }
  const auto id = ComplexMatrix::Identity(m.rows(), m.cols());
  const double left = (m.adjoint() * m - id).norm();
  const double right = (m * m.adjoint() - id).norm();
  return std::max(left, right);
}

ComplexMatrix orthonormal_completion(const ComplexVector& v) {
  const Eigen::Index n = v.size();
  const double norm = v.norm();
  if (n == 0 || !(norm > 1e-12)) {
    throw DomainError("orthonormal_completion: vector is (numerically) zero");
  }
  // A vector already of unit norm (up to rounding) is kept bit for bit.
  const bool unit_already = std::abs(norm - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon();
  const ComplexVector unit = unit_already ? ComplexVector(v) : ComplexVector(v / norm);

  // Rotate the pivot onto the nonnegative real axis; the reflector below maps
  // e1 to that rotated vector u, and the phase is put back on column 1 only.
  const Complex pivot = unit(0);
  const Complex phase =
      std::abs(pivot) > 0.0 ? pivot / std::abs(pivot) : Complex(1.0, 0.0);
  const ComplexVector u = unit / phase;
  const double u0 = u(0).real();
  const double tail = u.tail(n - 1).squaredNorm();

  ComplexMatrix q = ComplexMatrix::Identity(n, n);
  if (tail > 0.0) {
    // 1 - u0 computed without cancellation.
    const double one_minus_u0 = tail / (1.0 + u0);
    ComplexVector w = -u;
    w(0) = Complex(one_minus_u0, 0.0);
    // Reflector R = I - w w* / (1 - u0); R e1 = u.
    q -= (w * w.adjoint()) / one_minus_u0;
  }
  q.col(0) = unit;
  return q;
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeError("hermitian_eig: matrix is not square");
  }
  const Eigen::Index n = m.rows();
  const double scale = m.norm();
  if ((m - m.adjoint()).norm() > 1e-8 * scale) {
    throw DomainError("hermitian_eig: matrix is not Hermitian");
  }

  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q) {
      for (Eigen::Index p = 0; p < n; ++p) {
        if (p != q) s += std::norm(a(p, q));
      }
    }
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  const double target = 1e-15 * std::max(scale, 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm() <= target) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] annihilates a(p, q).
        const Complex e = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex j00(c, 0.0);
        const Complex j01(s, 0.0);
        const Complex j10 = -s * std::conj(e);
        const Complex j11 = c * std::conj(e);

        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex xp = a(r, p);
          const Complex xq = a(r, q);
          a(r, p) = xp * j00 + xq * j10;
          a(r, q) = xp * j01 + xq * j11;
        }
        for (Eigen::Index col = 0; col < n; ++col) {
          const Complex xp = a(p, col);
          const Complex xq = a(q, col);
          a(p, col) = std::conj(j00) * xp + std::conj(j10) * xq;
          a(q, col) = std::conj(j01) * xp + std::conj(j11) * xq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex xp = v(r, p);
          const Complex xq = v(r, q);
          v(r, p) = xp * j00 + xq * j10;
          v(r, q) = xp * j01 + xq * j11;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigen out;
  out.values.reserve(order.size());
  out.vectors.resize(n, n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values.push_back(a(order[k], order[k]).real());
    out.vectors.col(static_cast<Eigen::Index>(k)) = v.col(order[k]);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  const auto count = static_cast<std::size_t>(std::min(rows, cols));
  if (count == 0) return {};

  // Eigenvalues of [[0, m], [m*, 0]] are +-sigma_i plus |rows - cols| zeros.
  ComplexMatrix dilation = ComplexMatrix::Zero(rows + cols, rows + cols);
  dilation.topRightCorner(rows, cols) = m;
  dilation.bottomLeftCorner(cols, rows) = m.adjoint();
  const auto eig = hermitian_eig(dilation);

  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(std::max(0.0, eig.values[eig.values.size() - 1 - k]));
  }
  return out;
}

std::size_t kernel_dimension(const ComplexMatrix& m, double tol) {
  const auto sv = singular_values(m);
  const double largest = sv.empty() ? 0.0 : sv.front();
  const double threshold = largest < tol ? tol : tol * largest;
  std::size_t rank = 0;
  for (double s : sv) {
    if (s > threshold) ++rank;
  }
  return static_cast<std::size_t>(m.cols()) - rank;
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  const ComplexMatrix gram =
      m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
  const auto eig = hermitian_eig(gram);
  return std::sqrt(std::max(0.0, eig.values.back()));
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
  if (v.size() != n * n) throw ShapeError("unvec: length is not n^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

}  // namespace ncm
