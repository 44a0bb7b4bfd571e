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

#include "qspforge/multivariate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qspforge/errors.hpp"
#include "test_util.hpp"

namespace qspforge {
namespace {

using testing::Cx;

UnitaryMatrix dft3() {
  const double s = 1 / std::sqrt(3.0);
  Matrix m(3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      m(r, c) = std::polar(s, 2 * std::numbers::pi * static_cast<double>(r * c % 3) / 3);
  return UnitaryMatrix(m);
}

Protocol3D worked_example_3d() {
  const double h = std::sqrt(0.5);
  const UnitaryMatrix h12(Matrix{{1.0, 0.0, 0.0}, {0.0, h, h}, {0.0, h, -h}});
  return {{dft3(), swap_last_two(), h12 * swap_last_two()}};
}

Protocol2DChoice worked_example_2d() {
  const double s = 1 / std::sqrt(3.0), t = std::sqrt(2.0) * s;
  Protocol2DChoice p;
  p.ops = {UnitaryMatrix(Matrix{{s, -t}, {t, s}}), UnitaryMatrix::identity(2),
           UnitaryMatrix::identity(2)};
  p.choices.choices = {Variable::A, Variable::B};
  return p;
}

TEST(Multivariate, WorkedExampleThreeLevel) {
  const PolynomialState s = evaluate_protocol_3d(worked_example_3d());
  const double s3 = 1 / std::sqrt(3.0);
  const PolynomialState expected(
      2, 3, PolyKind::Analytic,
      {{{0, 0}, CVector{s3, 0.0, 0.0}}, {{1, 1}, CVector{0.0, std::sqrt(2.0) * s3, 0.0}}});
  EXPECT_LE(l2_distance(s, expected), 1e-12);
}

TEST(Multivariate, WorkedExampleEmbedding) {
  const Protocol2DChoice p = worked_example_2d();
  const PolynomialState two = evaluate_protocol_2d_choice(p);
  const PolynomialState three = evaluate_protocol_3d(embed_2d_in_3d(p));
  EXPECT_LE(l2_distance(three, evaluate_protocol_3d(worked_example_3d())), 1e-12);
  for (const auto &[k, v] : three.terms()) {
    EXPECT_LE(std::abs(v[2]), 1e-12);
    const CVector w = two.coefficient(k);
    EXPECT_LE(std::abs(v[0] - w[0]) + std::abs(v[1] - w[1]), 1e-12);
  }
}

TEST(Multivariate, EvaluationMatchesMatrixProducts) {
  std::mt19937_64 rng(31);
  for (std::size_t steps = 0; steps <= 6; ++steps) {
    const Protocol3D p = random_protocol_3d(steps, rng());
    const PolynomialState s = evaluate_protocol_3d(p);
    EXPECT_EQ(s.degree(), static_cast<int>(steps));
    for (int i = 0; i < 4; ++i) {
      const double ta = testing::uniform_phase(rng), tb = testing::uniform_phase(rng);
      EXPECT_LE(testing::distance(evaluate_at(s, TorusPoint{{ta, tb}}),
                                  testing::oracle_3d(p, testing::unit(ta), testing::unit(tb))),
                1e-12);
    }
    for (Picture pic : {Picture::Analytic, Picture::Laurent}) {
      const Protocol2DChoice c = random_protocol_2d_choice(steps, rng(), pic);
      const PolynomialState cs = evaluate_protocol_2d_choice(c);
      for (int i = 0; i < 4; ++i) {
        const double ta = testing::uniform_phase(rng), tb = testing::uniform_phase(rng);
        EXPECT_LE(testing::distance(evaluate_at(cs, TorusPoint{{ta, tb}}),
                                    testing::oracle_choice(c, testing::unit(ta),
                                                           testing::unit(tb))),
                  1e-12);
      }
    }
  }
}

TEST(Multivariate, EmbeddingReproducesChoiceProtocols) {
  std::mt19937_64 rng(37);
  for (std::size_t steps = 0; steps <= 8; ++steps) {
    for (int trial = 0; trial < 10; ++trial) {
      const Protocol2DChoice p = random_protocol_2d_choice(steps, rng());
      const PolynomialState two = evaluate_protocol_2d_choice(p);
      const PolynomialState three = evaluate_protocol_3d(embed_2d_in_3d(p));
      double worst = 0;
      for (const auto &[k, v] : three.terms()) {
        const CVector w = two.coefficient(k);
        worst = std::max({worst, std::abs(v[2]), std::abs(v[0] - w[0]), std::abs(v[1] - w[1])});
      }
      EXPECT_LE(worst, 1e-12);
    }
  }
  Protocol2DChoice laurent = worked_example_2d();
  laurent.picture = Picture::Laurent;
  EXPECT_THROW(embed_2d_in_3d(laurent), Error);
}

TEST(Multivariate, ChoicePicturesCorrespond) {
  std::mt19937_64 rng(41);
  for (std::size_t steps = 1; steps <= 6; ++steps) {
    Protocol2DChoice a = random_protocol_2d_choice(steps, rng());
    Protocol2DChoice l = a;
    l.picture = Picture::Laurent;
    const PolynomialState sa = evaluate_protocol_2d_choice(a);
    const PolynomialState sl = evaluate_protocol_2d_choice(l);
    EXPECT_LE(l2_distance(choice_analytic_to_laurent(sa, a.choices), sl), 1e-12);
    EXPECT_LE(l2_distance(choice_laurent_to_analytic(sl, a.choices), sa), 1e-12);
  }
}

TEST(Multivariate, NecessaryConditionsHoldForProtocolOutputs) {
  std::mt19937_64 rng(43);
  for (Picture pic : {Picture::Analytic, Picture::Laurent}) {
    for (std::size_t steps = 0; steps <= 6; ++steps) {
      const Protocol2DChoice p = random_protocol_2d_choice(steps, rng(), pic);
      const auto report = check_necessary_mqsp(evaluate_protocol_2d_choice(p), p.choices,
                                               {pic, SignalBasis::Wz, Algebra::FullSU2});
      EXPECT_TRUE(report.all_passed());
      EXPECT_NE(report.find("degree-bound-a"), nullptr);
      EXPECT_EQ(report.find("parity-a") != nullptr, pic == Picture::Laurent);
    }
  }
}

TEST(Multivariate, DegreeBoundFailsWithTooFewCalls) {
  const Protocol2DChoice p = worked_example_2d();
  ChoiceVector only_a;
  only_a.choices = {Variable::A, Variable::A};
  const auto report = check_necessary_mqsp(evaluate_protocol_2d_choice(p), only_a, {});
  EXPECT_TRUE(report.find("degree-bound-a")->passed);
  EXPECT_FALSE(report.find("degree-bound-b")->passed);
  ASSERT_EQ(report.find("degree-bound-b")->witness.indices.size(), 1u);
  EXPECT_EQ(report.find("degree-bound-b")->witness.indices[0], (MultiIndex{1, 1}));
}

TEST(Multivariate, RotationConventionsOnTwoVariables) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  for (std::size_t steps = 1; steps <= 5; ++steps) {
    Protocol2DChoice x;
    x.picture = Picture::Laurent;
    for (std::size_t k = 0; k < steps; ++k) {
      x.choices.choices.push_back(rng() % 2 ? Variable::A : Variable::B);
    }
    for (std::size_t k = 0; k <= steps; ++k) x.ops.push_back(rotation_x(angle(rng)));
    const auto rx = check_necessary_mqsp(evaluate_protocol_2d_choice(x), x.choices,
                                         {Picture::Laurent, SignalBasis::Wz,
                                          Algebra::XRotations});
    EXPECT_TRUE(rx.find("wz-real-imag")->passed);

    // Z rotations around a Hadamard-conjugated signal, written in the Wz frame.
    Protocol2DChoice z = x;
    const UnitaryMatrix h = hadamard();
    for (std::size_t k = 0; k <= steps; ++k) {
      const UnitaryMatrix r = rotation_z(angle(rng));
      z.ops[k] = k == 0 ? h * r : (k == steps ? r * h : h * r * h);
    }
    const auto rz = check_necessary_mqsp(evaluate_protocol_2d_choice(z), z.choices,
                                         {Picture::Laurent, SignalBasis::Wx,
                                          Algebra::ZRotations});
    EXPECT_TRUE(rz.find("wx-reciprocal")->passed);
    EXPECT_FALSE(rz.find("wz-real-imag"));
  }
}

}  // namespace
}  // namespace qspforge
