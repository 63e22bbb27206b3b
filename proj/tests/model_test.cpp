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

#include <gtest/gtest.h>

#include <limits>
#include <set>

#include "ncm/error.hpp"
#include "support.hpp"

namespace ncm {
namespace {

using testing::basis;
using testing::model_of;
using testing::random_model;

// Colligation blocks by explicit index sums over U's entries.
struct BruteColligation {
  std::vector<ComplexMatrix> a, b;
  ComplexMatrix c, d;
};

BruteColligation brute_colligation(const InteractionModel& m, const BasisFrame& f) {
  const int h = m.dim_h, k = m.dim_k, p = m.dim_p;
  BruteColligation out;
  auto u = [&](int ih_out, int q, int ih_in, int t) { return m.u(ih_out * p + q, ih_in * k + t); };
  // Amplitude of (e_a (x) f_out) in U (e_b (x) f_in).
  auto amp = [&](int a, const ComplexVector& f_out, int b, const ComplexVector& f_in) {
    Complex s = 0.0;
    for (int q = 0; q < p; ++q)
      for (int t = 0; t < k; ++t) s += std::conj(f_out(q)) * u(a, q, b, t) * f_in(t);
    return s;
  };
  for (int j = 0; j < p; ++j) {
    ComplexMatrix aj(h, h), bj(h, h * (k - 1));
    for (int x = 0; x < h; ++x) {
      for (int y = 0; y < h; ++y) aj(x, y) = amp(x, f.p_basis.col(j), y, f.k_basis.col(0));
      for (int y = 0; y < h; ++y)
        for (int mcol = 1; mcol < k; ++mcol) bj(x, y * (k - 1) + mcol - 1) = amp(x, f.p_basis.col(j), y, f.k_basis.col(mcol));
    }
    out.a.push_back(aj);
    out.b.push_back(bj);
  }
  out.c = ComplexMatrix::Zero(p - 1, h);
  out.d = ComplexMatrix::Zero(p - 1, h * (k - 1));
  for (int yq = 1; yq < p; ++yq) {
    for (int x = 0; x < h; ++x) {
      for (int a = 0; a < h; ++a) {
        const Complex wa = std::conj(m.omega_h(a));
        out.c(yq - 1, x) += wa * amp(a, f.p_basis.col(yq), x, f.k_basis.col(0));
        for (int mcol = 1; mcol < k; ++mcol)
          out.d(yq - 1, x * (k - 1) + mcol - 1) += wa * amp(a, f.p_basis.col(yq), x, f.k_basis.col(mcol));
      }
    }
  }
  return out;
}

Colligation colligation_of(const InteractionModel& m) { return extract_colligation(m, canonical_frame(m)); }

TEST(Validate, SwapAndIdentityAreValid) {
  EXPECT_TRUE(validate(model_of("swap")).empty());
  EXPECT_TRUE(validate(model_of("swap", {3, 3, 3})).empty());
  EXPECT_TRUE(validate(model_of("identity", {3, 2, 2})).empty());
  EXPECT_TRUE(validate(model_of("identity", {1, 4, 4})).empty());
}

TEST(Validate, BitFlipBreaksVacuum) {
  InteractionModel m = model_of("identity");
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  m.u = tensor_product(x, ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  const auto report = validate(m);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].name, "vacuum_condition");
  EXPECT_NEAR(report[0].defect, std::sqrt(2.0), 1e-15);
  EXPECT_THROW(require_valid(m), DomainError);
}

TEST(Validate, ReportsNonUnitaryAndVacuumNorm) {
  InteractionModel m = model_of("identity");
  m.u *= 1.1;
  m.omega_k *= 2.0;
  const auto report = validate(m);
  std::set<std::string> names;
  for (const auto& v : report) names.insert(v.name);
  EXPECT_TRUE(names.count("unitarity"));
  EXPECT_TRUE(names.count("omega_k_norm"));
}

TEST(Validate, ShapeErrorsAreHard) {
  InteractionModel m = model_of("identity");
  m.dim_p = 3;
  EXPECT_THROW(validate(m), ShapeError);
  m = model_of("identity");
  m.u = ComplexMatrix::Identity(3, 3);
  EXPECT_THROW(validate(m), ShapeError);
  m = model_of("identity");
  m.omega_h = ComplexVector::Ones(3);
  EXPECT_THROW(validate(m), ShapeError);
  m = model_of("identity");
  m.u(0, 0) = Complex(std::numeric_limits<double>::infinity(), 0.0);
  EXPECT_THROW(validate(m), ShapeError);
}

TEST(Generate, ClosedForms) {
  const InteractionModel ps0 = model_of("partial_swap:0");
  EXPECT_LE((ps0.u - ComplexMatrix::Identity(4, 4)).norm(), 1e-15);
  const InteractionModel ps = model_of("partial_swap:1.5707963267948966");
  EXPECT_LE((ps.u - testing::swap_matrix(2)).norm(), 1e-15);
  EXPECT_TRUE(validate(random_model(7)).empty());
  EXPECT_TRUE(validate(random_model(7, {3, 2, 2})).empty());
  EXPECT_EQ(random_model(7).u, random_model(7).u);
  EXPECT_NE(random_model(7).u, random_model(8).u);
  EXPECT_THROW(model_of("swap", {2, 3, 3}), ShapeError);
  EXPECT_THROW(model_of("identity", {2, 2, 3}), ShapeError);
}

TEST(GeneratorSpec, ParseAndRender) {
  EXPECT_EQ(GeneratorSpec::parse("random:12").seed, 12u);
  EXPECT_EQ(GeneratorSpec::parse("partial_swap:0.25").theta, 0.25);
  EXPECT_EQ(GeneratorSpec::parse("swap").to_string(), "swap");
  EXPECT_EQ(GeneratorSpec::parse("random:5").to_string(), "random:5");
  for (const char* bad : {"", "swapx", "swap:1", "random", "random:x", "partial_swap:1.0z", "identity:2"}) {
    EXPECT_THROW(GeneratorSpec::parse(bad), ShapeError) << bad;
  }
}

TEST(CanonicalFrame, Examples) {
  const BasisFrame f = canonical_frame(model_of("swap"));
  EXPECT_EQ(f.p_basis, ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  InteractionModel m = model_of("identity");
  m.omega_p << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const BasisFrame g = canonical_frame(m);
  EXPECT_EQ(g.p_basis.col(0), m.omega_p);
  EXPECT_NEAR(std::abs(g.p_basis(0, 1) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(g.p_basis(1, 1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const InteractionModel r = random_model(seed, {2, 3, 3});
    const BasisFrame fr = canonical_frame(r);
    EXPECT_EQ(fr.k_basis.col(0), r.omega_k);
    EXPECT_EQ(fr.p_basis.col(0), r.omega_p);
    EXPECT_LE(unitarity_defect(fr.k_basis), 1e-12);
    EXPECT_LE(unitarity_defect(fr.p_basis), 1e-12);
  }
}

TEST(ExtractColligation, IdentityClosedForm) {
  const Colligation col = colligation_of(model_of("identity"));
  EXPECT_EQ(col.a[0], ComplexMatrix(ComplexMatrix::Identity(2, 2)));
  EXPECT_EQ(col.a[1], ComplexMatrix(ComplexMatrix::Zero(2, 2)));
  EXPECT_EQ(col.c, ComplexMatrix(ComplexMatrix::Zero(1, 2)));
  ComplexMatrix d(1, 2);
  d << 1, 0;
  EXPECT_EQ(col.dmat, d);
}

TEST(ExtractColligation, SwapClosedForm) {
  const Colligation col = colligation_of(model_of("swap"));
  for (int j = 0; j < 2; ++j) {
    const ComplexMatrix expected = basis(2, 0) * basis(2, j).adjoint();
    EXPECT_LE((col.a[j] - expected).norm(), 1e-15);
  }
  ComplexMatrix c(1, 2);
  c << 0, 1;
  EXPECT_LE((col.c - c).norm(), 1e-15);
  EXPECT_LE(col.dmat.norm(), 1e-15);
}

TEST(ExtractColligation, MatchesIndexSums) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Dims dims{1 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 2), 2 + static_cast<int>(seed % 2)};
    const InteractionModel m = random_model(seed, dims);
    const BasisFrame f = canonical_frame(m);
    const Colligation col = extract_colligation(m, f);
    const BruteColligation brute = brute_colligation(m, f);
    for (int j = 0; j < m.dim_p; ++j) {
      EXPECT_LE((col.a[j] - brute.a[j]).norm(), 1e-13);
      EXPECT_LE((col.b[j] - brute.b[j]).norm(), 1e-13);
    }
    EXPECT_LE((col.c - brute.c).norm(), 1e-13);
    EXPECT_LE((col.dmat - brute.d).norm(), 1e-13);
  }
}

TEST(ExtractColligation, StructuralInvariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Dims dims{2 + static_cast<int>(seed % 2), 2 + static_cast<int>(seed / 2 % 2), 2 + static_cast<int>(seed / 2 % 2)};
    const InteractionModel m = random_model(seed, dims);
    const BasisFrame f = canonical_frame(m);
    const Colligation col = extract_colligation(m, f);
    EXPECT_LE(unitarity_defect(stacked_ab(col)), 1e-8);
    for (int j = 0; j < col.d; ++j) {
      const Complex w = f.p_basis.col(j).dot(m.omega_p);
      EXPECT_LE((col.a[j] * m.omega_h - w * m.omega_h).norm(), 1e-10);
    }
    EXPECT_LE((col.c * m.omega_h).norm(), 1e-10);
    const ReducedColligation red = reduce_colligation(col);
    EXPECT_LE(unitarity_defect(stacked(red)), 1e-8);
    EXPECT_LE(unitarity_defect(red.embedding.adjoint() * red.embedding), 1e-12);
    EXPECT_LE((red.embedding.adjoint() * m.omega_h).norm(), 1e-12);
  }
}

TEST(ExtractColligation, RejectsInvalidModel) {
  InteractionModel m = model_of("identity");
  m.u *= 1.5;
  EXPECT_THROW(colligation_of(m), DomainError);
}

TEST(ExtractColligation, BasisCovariance) {
  const InteractionModel m = random_model(21, {2, 3, 3});
  const BasisFrame f = canonical_frame(m);
  const Colligation col = extract_colligation(m, f);
  ComplexMatrix v = ComplexMatrix::Identity(3, 3);
  v.bottomRightCorner(2, 2) = random_unitary(2, 99);
  BasisFrame g = f;
  g.p_basis = f.p_basis * v;
  const Colligation rot = extract_colligation(m, g);
  ComplexMatrix z = ComplexMatrix::Zero(2, 2), z_rot = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 3; ++i) {
    ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
    for (int j = 0; j < 3; ++j) expected += std::conj(v(j, i)) * col.a[j];
    EXPECT_LE((rot.a[i] - expected).norm(), 1e-10);
    z += col.a[i].adjoint() * col.a[i];
    z_rot += rot.a[i].adjoint() * rot.a[i];
  }
  EXPECT_LE((z - z_rot).norm(), 1e-10);
}

TEST(ReduceColligation, ClosedForms) {
  const ReducedColligation swap = reduce_colligation(colligation_of(model_of("swap")));
  for (const auto& a : swap.a) EXPECT_LE(a.norm(), 1e-15);
  ASSERT_EQ(swap.c.rows(), 1);
  ASSERT_EQ(swap.c.cols(), 1);
  EXPECT_NEAR(std::abs(swap.c(0, 0) - 1.0), 0.0, 1e-15);

  const ReducedColligation id = reduce_colligation(colligation_of(model_of("identity")));
  EXPECT_NEAR(std::abs(id.a[0](0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_LE(id.c.norm(), 1e-15);

  const ReducedColligation one = reduce_colligation(colligation_of(random_model(3, {1, 3, 3})));
  for (const auto& a : one.a) EXPECT_EQ(a.size(), 0);
  EXPECT_EQ(one.c.cols(), 0);
  EXPECT_EQ(one.dmat.rows(), 2);
  EXPECT_EQ(one.dmat.cols(), 2);
  EXPECT_LE(unitarity_defect(one.dmat), 1e-12);
  EXPECT_LE(unitarity_defect(stacked(one)), 1e-12);
}

TEST(Degenerate, OneDimensionalSlots) {
  const InteractionModel m = random_model(4, {3, 1, 1});
  EXPECT_TRUE(validate(m).empty());
  const Colligation col = colligation_of(m);
  EXPECT_EQ(col.dim_u, 0);
  EXPECT_EQ(col.dim_y, 0);
  EXPECT_EQ(col.d, 1);
  EXPECT_LE(unitarity_defect(col.a[0]), 1e-12);
}

}  // namespace
}  // namespace ncm
