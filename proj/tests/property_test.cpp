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

// Seeded randomized properties across modules.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qspforge/multivariate.hpp"
#include "test_util.hpp"

namespace qspforge {
namespace {

constexpr std::uint64_t kSeed = 0x5eed;

TEST(Property, ProtocolOutputsAreNormalized) {
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t steps = rng() % 9;
    EXPECT_LE(normalization_residual(evaluate_protocol_3d(random_protocol_3d(steps, rng()))),
              1e-10);
    const Picture pic = trial % 2 ? Picture::Laurent : Picture::Analytic;
    EXPECT_LE(normalization_residual(
                  evaluate_protocol_2d_choice(random_protocol_2d_choice(steps, rng(), pic))),
              1e-10);
    const SignalConvention conv{pic, trial % 4 < 2 ? SignalBasis::Wz : SignalBasis::Wx,
                                Algebra::FullSU2};
    EXPECT_LE(normalization_residual(evaluate_protocol_1d(random_protocol_1d(conv, steps, rng()))),
              1e-10);
  }
}

TEST(Property, SupportStaysInTheTriangle) {
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t steps = 1 + rng() % 8;
    const PolynomialState s = evaluate_protocol_3d(random_protocol_3d(steps, rng()));
    EXPECT_TRUE(has_triangle_support(s));
    EXPECT_EQ(s.degree(), static_cast<int>(steps));
    for (const auto &[k, v] : s.terms()) EXPECT_LE(k.total(), static_cast<int>(steps));
  }
}

TEST(Property, SideConditionsBeforeTheLastOperator) {
  std::mt19937_64 rng(kSeed + 2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t steps = 1 + rng() % 7;
    Protocol3D p = random_protocol_3d(steps, rng());
    p.ops.back() = UnitaryMatrix::identity(3);
    const PolynomialState s = evaluate_protocol_3d(p);
    const int n = static_cast<int>(steps);
    for (const auto &[k, v] : s.terms()) {
      if (k[1] == 0) EXPECT_LE(std::abs(v[2]), 1e-14);
      if (k[0] == 0) EXPECT_LE(std::abs(v[1]), 1e-14);
      if (k.total() == n) EXPECT_LE(std::abs(v[0]), 1e-14);
    }
  }
}

TEST(Property, EndpointOrthogonality) {
  std::mt19937_64 rng(kSeed + 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const PolynomialState s = evaluate_protocol_3d(random_protocol_3d(n, rng()));
    const CVector g00 = s.coefficient({0, 0}), gn0 = s.coefficient({n, 0}),
                  g0n = s.coefficient({0, n});
    for (int k = 0; k <= n; ++k) {
      EXPECT_LE(std::abs(inner(g0n, s.coefficient({k, 0}))), 1e-9);
      EXPECT_LE(std::abs(inner(gn0, s.coefficient({0, k}))), 1e-9);
      EXPECT_LE(std::abs(inner(g00, s.coefficient({k, n - k}))), 1e-9);
    }
  }
}

TEST(Property, QIsInvariantUnderProcessingUnitaries) {
  std::mt19937_64 rng(kSeed + 4);
  const PolynomialState base = testing::counterexample();
  const double q0 = q_gamma(base).q;
  for (int trial = 0; trial < 50; ++trial) {
    const PolynomialState s = base.transformed(haar_random_unitary(2, rng()));
    EXPECT_NEAR(q_gamma(s).q, q0, 1e-12);
    EXPECT_EQ(*check_unimplementable(s).implementability, Implementability::NotImplementable);
  }
}

TEST(Property, UnitaryTransformsPreserveDistance) {
  std::mt19937_64 rng(kSeed + 5);
  for (int trial = 0; trial < 50; ++trial) {
    const PolynomialState a = evaluate_protocol_3d(random_protocol_3d(3, rng()));
    const PolynomialState b = evaluate_protocol_3d(random_protocol_3d(3, rng()));
    const UnitaryMatrix u = haar_random_unitary(3, rng());
    EXPECT_NEAR(l2_distance(a.transformed(u), b.transformed(u)), l2_distance(a, b), 1e-12);
    EXPECT_LE(normalization_residual(a.transformed(u)), 1e-10);
  }
}

TEST(Property, RankSpanIsOrthonormal) {
  std::mt19937_64 rng(kSeed + 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 2 + rng() % 2;
    const std::size_t count = 1 + rng() % 4;
    std::vector<CVector> vs;
    for (std::size_t i = 0; i < count; ++i) vs.push_back(testing::random_vector(dim, rng));
    const SpanResult r = rank_span(vs);
    EXPECT_EQ(r.rank, std::min(dim, count));
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
      for (std::size_t j = 0; j < r.basis.size(); ++j) {
        EXPECT_NEAR(std::abs(inner(r.basis[i], r.basis[j])), i == j ? 1.0 : 0.0, 1e-12);
      }
    }
    for (const auto &v : orthogonal_complement(vs, dim)) {
      for (const auto &w : vs) EXPECT_LE(std::abs(inner(v, w)), 1e-12);
    }
  }
}

}  // namespace
}  // namespace qspforge
