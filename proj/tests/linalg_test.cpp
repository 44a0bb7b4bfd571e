// Copyright 2026 The qspforge Authors
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

#include "qspforge/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qspforge/errors.hpp"
#include "test_util.hpp"

namespace qspforge {
namespace {

using testing::random_vector;

TEST(CVector, InnerProductIsConjugateLinearInFirstSlot) {
  const CVector u{Complex(0, 1), 0.0};
  const CVector v{1.0, 0.0};
  EXPECT_EQ(inner(u, v), Complex(0, -1));
  EXPECT_EQ(inner(v, u), Complex(0, 1));
}

TEST(CVector, MismatchedDimensionsThrow) {
  const CVector u(2), v(3);
  EXPECT_THROW(inner(u, v), Error);
  CVector w(2);
  EXPECT_THROW(w += v, Error);
}

TEST(CVector, RejectsNonFiniteEntries) {
  EXPECT_THROW((CVector{std::nan(""), 0.0}), Error);
}

TEST(Matrix, DeterminantOfPermutation) {
  EXPECT_NEAR(std::abs(swap_last_two().matrix().determinant() + 1.0), 0.0, 1e-15);
  const Matrix m{{2.0, 1.0}, {Complex(0, 1), 3.0}};
  EXPECT_NEAR(std::abs(m.determinant() - Complex(6, -1)), 0.0, 1e-15);
}

TEST(UnitaryMatrix, RejectsScaledHaarMatrix) {
  Matrix m = haar_random_unitary(3, 4).matrix();
  m *= 1.01;
  try {
    UnitaryMatrix u(m);
    FAIL() << "accepted a non-unitary matrix";
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
    EXPECT_NEAR(e.details().at("residual"), 1.01 * 1.01 - 1, 1e-9);
  }
}

TEST(UnitaryMatrix, HaarIsUnitaryAndReproducible) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::size_t dim : {2u, 3u}) {
      const UnitaryMatrix u = haar_random_unitary(dim, seed);
      EXPECT_LE(u.matrix().unitarity_residual(), 1e-13);
      EXPECT_EQ(u, haar_random_unitary(dim, seed));
    }
  }
  EXPECT_THROW(haar_random_unitary(4, 0), Error);
}

TEST(Operators, RotationsMatchExponentials) {
  const double phi = 0.37;
  const UnitaryMatrix x = rotation_x(phi);
  EXPECT_NEAR(std::abs(x(0, 1) - Complex(0, std::sin(phi))), 0, 1e-15);
  const UnitaryMatrix z = rotation_z(phi);
  EXPECT_NEAR(std::abs(z(1, 1) - std::polar(1.0, -phi)), 0, 1e-15);
  const UnitaryMatrix h = hadamard();
  EXPECT_LE((h * h).matrix().unitarity_residual(), 1e-15);
  EXPECT_NEAR(std::abs((h * h)(0, 0) - 1.0), 0, 1e-15);
}

TEST(Operators, EmbedBlockKeepsLastLevel) {
  const UnitaryMatrix e = embed_block(hadamard());
  EXPECT_EQ(e.dim(), 3u);
  EXPECT_EQ(e(2, 2), Complex(1));
  EXPECT_EQ(e(0, 2), Complex(0));
}

TEST(Subspace, RankAndComplement) {
  const std::vector<CVector> vs{{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  const SpanResult r = rank_span(vs);
  EXPECT_EQ(r.rank, 2u);
  const auto comp = orthogonal_complement(vs, 3);
  ASSERT_EQ(comp.size(), 1u);
  EXPECT_NEAR(std::abs(comp[0][2]), 1.0, 1e-15);
  EXPECT_EQ(orthogonal_complement(std::vector<CVector>{}, 3).size(), 3u);
}

TEST(Subspace, RestrictToComplement) {
  const std::vector<CVector> plane{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  const std::vector<CVector> excluded{{1.0, 1.0, 5.0}};
  const auto rest = restrict_to_complement(plane, excluded);
  ASSERT_EQ(rest.size(), 1u);
  EXPECT_NEAR(std::abs(inner(rest[0], excluded[0])), 0, 1e-14);
  EXPECT_NEAR(std::abs(rest[0][2]), 0, 1e-14);
}

TEST(Subspace, CompleteToUnitaryKeepsGivenColumns) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    CVector v = random_vector(3, rng);
    v *= 1.0 / v.norm();
    const CVector cols[1] = {v};
    const UnitaryMatrix u = complete_to_unitary(cols);
    EXPECT_EQ(u.column(0), v);
    EXPECT_LE(u.matrix().unitarity_residual(), 1e-12);
  }
  const CVector bad[2] = {{1.0, 0.0}, {1.0, 0.0}};
  EXPECT_THROW(complete_to_unitary(bad), Error);
}

TEST(Det2, Antisymmetric) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const CVector u = random_vector(2, rng), v = random_vector(2, rng);
    EXPECT_NEAR(std::abs(det2(u, v) + det2(v, u)), 0, 1e-14);
    EXPECT_NEAR(std::abs(det2(u, u)), 0, 1e-14);
  }
}

}  // namespace
}  // namespace qspforge
