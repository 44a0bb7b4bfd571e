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

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qspforge/linalg.hpp"
#include "qspforge/multivariate.hpp"
#include "qspforge/polystate.hpp"
#include "qspforge/univariate.hpp"

namespace qspforge::testing {

using Cx = std::complex<double>;
using Vec = std::vector<Cx>;

inline double uniform_phase(std::mt19937_64 &rng) {
  return std::uniform_real_distribution<double>(0, 2 * std::numbers::pi)(rng);
}

inline CVector random_vector(std::size_t dim, std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  CVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = Cx(g(rng), g(rng));
  return v;
}

inline Vec mul(const UnitaryMatrix &m, const Vec &v) {
  Vec out(v.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m(r, c) * v[c];
  }
  return out;
}

inline Vec first_column(const UnitaryMatrix &m) {
  Vec v(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) v[r] = m(r, 0);
  return v;
}

inline Vec hadamard2(const Vec &v) {
  const double h = std::sqrt(0.5);
  return {h * (v[0] + v[1]), h * (v[0] - v[1])};
}

// Direct product of 2x2 matrices at one signal value.
inline Vec oracle_1d(const Protocol1D &p, Cx z) {
  const bool laurent = p.convention.picture == Picture::Laurent;
  const bool wx = p.convention.basis == SignalBasis::Wx;
  Vec v = first_column(p.ops[0]);
  for (std::size_t k = 1; k < p.ops.size(); ++k) {
    if (wx) v = hadamard2(v);
    v[0] *= laurent ? 1.0 / z : 1.0;
    v[1] *= z;
    if (wx) v = hadamard2(v);
    v = mul(p.ops[k], v);
  }
  return v;
}

inline Vec oracle_choice(const Protocol2DChoice &p, Cx a, Cx b) {
  const bool laurent = p.picture == Picture::Laurent;
  Vec v = first_column(p.ops[0]);
  for (std::size_t k = 1; k < p.ops.size(); ++k) {
    const Cx z = p.choices.choices[k - 1] == Variable::A ? a : b;
    v[0] *= laurent ? 1.0 / z : 1.0;
    v[1] *= z;
    v = mul(p.ops[k], v);
  }
  return v;
}

inline Vec oracle_3d(const Protocol3D &p, Cx a, Cx b) {
  Vec v = first_column(p.ops[0]);
  for (std::size_t k = 1; k < p.ops.size(); ++k) {
    v[1] *= a;
    v[2] *= b;
    v = mul(p.ops[k], v);
  }
  return v;
}

inline double distance(const CVector &u, const Vec &v) {
  double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::norm(u[i] - v[i]);
  return std::sqrt(s);
}

inline Cx unit(double theta) { return std::polar(1.0, theta); }

inline PolynomialState perturb(const PolynomialState &s, double eps, std::mt19937_64 &rng) {
  PolynomialState::Terms terms = s.terms();
  std::vector<CVector *> slots;
  for (auto &[k, v] : terms) slots.push_back(&v);
  std::vector<CVector> noise;
  double total = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    noise.push_back(random_vector(s.dim(), rng));
    total += noise.back().norm2();
  }
  const double scale = eps / std::sqrt(total);
  for (std::size_t i = 0; i < slots.size(); ++i) *slots[i] += noise[i] * scale;
  return PolynomialState(s.num_vars(), s.dim(), s.kind(), std::move(terms));
}

// The two-variable qubit state from the fixtures, coefficients written out
// by hand, rescaled to unit weight.
inline PolynomialState counterexample() {
  const Cx c1(-122.0 / 37, -8.0 / 37), c2(114.0 / 37, 56.0 / 37), c3(362.0 / 111, -248.0 / 111);
  const Cx c4(692.0 / 111, -719.0 / 222);
  const Cx d1(122.0 / 37, 66.0 / 37), d2(56.0 / 37, 114.0 / 37), d3(362.0 / 111, -418.0 / 111);
  PolynomialState::Terms t{
      {{2, 2}, CVector{1.0, 1.0}}, {{0, 0}, CVector{1.0, -1.0}},
      {{1, 2}, CVector{c1, -d1}},  {{1, 0}, CVector{c1, d1}},
      {{2, 0}, CVector{c2, -d2}},  {{0, 2}, CVector{c2, d2}},
      {{2, 1}, CVector{c3, d3}},   {{0, 1}, CVector{c3, -d3}},
      {{1, 1}, CVector{c4, 0.0}},
  };
  PolynomialState s(2, 2, PolyKind::Analytic, std::move(t));
  return s.scaled(1.0 / std::sqrt(s.total_weight()));
}

}  // namespace qspforge::testing
