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

#include "qspforge/polystate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qspforge/errors.hpp"
#include "test_util.hpp"

namespace qspforge {
namespace {

using testing::Cx;

TEST(PolynomialState, ConstantEvaluatesToItself) {
  const auto s = PolynomialState::constant(2, PolyKind::Analytic, CVector{1.0, 0.0, 0.0});
  const CVector v = evaluate_at(s, TorusPoint{{0.3, 1.9}});
  EXPECT_EQ(v, (CVector{1.0, 0.0, 0.0}));
  EXPECT_EQ(normalization_residual(s), 0.0);
}

TEST(PolynomialState, EvaluatesAtOne) {
  const double h = std::sqrt(0.5);
  const PolynomialState s(2, 2, PolyKind::Analytic,
                          {{{1, 1}, CVector{0.0, h}}, {{0, 0}, CVector{h, 0.0}}});
  const CVector v = evaluate_at(s, TorusPoint{{0.0, 0.0}});
  EXPECT_NEAR(std::abs(v[0] - h), 0, 1e-15);
  EXPECT_NEAR(std::abs(v[1] - h), 0, 1e-15);
  EXPECT_LE(normalization_residual(s), 1e-15);
}

TEST(PolynomialState, ResidualOfScaledConstant) {
  const auto s = PolynomialState::constant(1, PolyKind::Analytic, CVector{1.0, 0.0});
  EXPECT_DOUBLE_EQ(normalization_residual(s.scaled(2.0)), 3.0);
  EXPECT_FALSE(is_normalized(s.scaled(2.0)));
}

TEST(PolynomialState, ResidualSeesOffLagCorrelation) {
  // (1 + z)|0> / sqrt(2) has unit weight but the lag-1 sum is 1/2.
  const double h = std::sqrt(0.5);
  const PolynomialState s(1, 2, PolyKind::Analytic,
                          {{{0}, CVector{h, 0.0}}, {{1}, CVector{h, 0.0}}});
  EXPECT_NEAR(normalization_residual(s), 0.5, 1e-15);
}

TEST(PolynomialState, ValidatesShape) {
  EXPECT_THROW(PolynomialState(1, 2, PolyKind::Analytic, {{{-1}, CVector{1.0, 0.0}}}), Error);
  EXPECT_THROW(PolynomialState(2, 2, PolyKind::Analytic, {{{1}, CVector{1.0, 0.0}}}), Error);
  EXPECT_THROW(PolynomialState(1, 2, PolyKind::Analytic, {{{1}, CVector{1.0, 0.0, 0.0}}}),
               Error);
}

TEST(PolynomialState, PrunesZeroCoefficients) {
  const PolynomialState s(1, 2, PolyKind::Laurent,
                          {{{0}, CVector{1.0, 0.0}}, {{3}, CVector{1e-16, 0.0}}});
  EXPECT_EQ(s.terms().size(), 1u);
  EXPECT_EQ(s.degree(), 0);
}

TEST(PolynomialState, LaurentDegreeIsLargestAbsoluteExponent) {
  const PolynomialState s(1, 2, PolyKind::Laurent,
                          {{{-3}, CVector{1.0, 0.0}}, {{1}, CVector{1.0, 0.0}}});
  EXPECT_EQ(s.degree(), 3);
  EXPECT_EQ(s.min_exponent(0), -3);
  EXPECT_EQ(s.max_exponent(0), 1);
}

TEST(PolynomialState, EffectiveDimension) {
  const PolynomialState s(2, 3, PolyKind::Analytic,
                          {{{0, 0}, CVector{1.0, 0.0, 0.0}},
                           {{1, 0}, CVector{2.0, 0.0, 0.0}},
                           {{0, 1}, CVector{0.0, 1.0, 0.0}}});
  EXPECT_EQ(effective_dimension(s), 2u);
}

TEST(PolynomialState, CounterexampleHasUnitNormEverywhere) {
  const PolynomialState s = testing::counterexample();
  EXPECT_LE(normalization_residual(s), 1e-12);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 16; ++i) {
    const TorusPoint p{{testing::uniform_phase(rng), testing::uniform_phase(rng)}};
    EXPECT_NEAR(evaluate_at(s, p).norm(), 1.0, 1e-9);
  }
}

TEST(PolynomialState, DistancesAndShifts) {
  const auto a = PolynomialState::constant(1, PolyKind::Analytic, CVector{1.0, 0.0});
  const auto b = shift_exponents(a, MultiIndex{2});
  EXPECT_NEAR(l2_distance(a, b), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sup_distance_sampled(a, b, 8), 2.0, 1e-12);
  EXPECT_EQ(b.coefficient(MultiIndex{2}), (CVector{1.0, 0.0}));
  const auto c = shift_exponents(b, MultiIndex{-3});
  EXPECT_EQ(c.kind(), PolyKind::Laurent);
}

TEST(PolynomialState, TriangleSupport) {
  EXPECT_EQ(testing::counterexample().degree(), 4);
  const PolynomialState s(2, 3, PolyKind::Analytic,
                          {{{0, 0}, CVector{1.0, 0.0, 0.0}}, {{2, 1}, CVector{1.0, 0.0, 0.0}}});
  EXPECT_TRUE(has_triangle_support(s));
}

}  // namespace
}  // namespace qspforge
