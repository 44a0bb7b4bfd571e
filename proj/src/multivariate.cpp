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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "qspforge/errors.hpp"

namespace qspforge {

int ChoiceVector::count(Variable v) const noexcept {
  return static_cast<int>(std::count(choices.begin(), choices.end(), v));
}

namespace {

using Lattice = std::map<MultiIndex, CVector>;

void add_component(Lattice &lattice, const MultiIndex &k, std::size_t dim, std::size_t comp,
                   Complex x) {
  auto it = lattice.try_emplace(k, CVector(dim)).first;
  it->second[comp] += x;
}

MultiIndex step(const MultiIndex &k, Variable v, int delta) {
  MultiIndex r = k;
  r[static_cast<std::size_t>(v)] += delta;
  return r;
}

void apply(Lattice &lattice, const UnitaryMatrix &op) {
  for (auto &[k, v] : lattice) v = op * v;
}

}  // namespace

PolynomialState evaluate_protocol_3d(const Protocol3D &p) {
  if (p.ops.empty()) throw Error(ErrorCode::InvalidArgument, "protocol has no operators");
  for (const auto &op : p.ops) {
    if (op.dim() != 3) throw Error(ErrorCode::DimensionMismatch, "three-level ops must be 3x3");
  }
  Lattice lattice{{MultiIndex{0, 0}, p.ops.front().column(0)}};
  for (std::size_t j = 1; j < p.ops.size(); ++j) {
    Lattice next;
    for (const auto &[k, v] : lattice) {
      add_component(next, k, 3, 0, v[0]);
      add_component(next, step(k, Variable::A, 1), 3, 1, v[1]);
      add_component(next, step(k, Variable::B, 1), 3, 2, v[2]);
    }
    lattice = std::move(next);
    apply(lattice, p.ops[j]);
  }
  return PolynomialState(2, 3, PolyKind::Analytic, std::move(lattice));
}

PolynomialState evaluate_protocol_2d_choice(const Protocol2DChoice &p) {
  if (p.ops.empty()) throw Error(ErrorCode::InvalidArgument, "protocol has no operators");
  if (p.ops.size() != p.choices.size() + 1) {
    throw Error(ErrorCode::DimensionMismatch, "choice protocol needs one more op than choices");
  }
  for (const auto &op : p.ops) {
    if (op.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "choice-protocol ops must be 2x2");
  }
  const bool laurent = p.picture == Picture::Laurent;
  Lattice lattice{{MultiIndex{0, 0}, p.ops.front().column(0)}};
  for (std::size_t j = 1; j < p.ops.size(); ++j) {
    const Variable var = p.choices.choices[j - 1];
    Lattice next;
    for (const auto &[k, v] : lattice) {
      add_component(next, laurent ? step(k, var, -1) : k, 2, 0, v[0]);
      add_component(next, step(k, var, 1), 2, 1, v[1]);
    }
    lattice = std::move(next);
    apply(lattice, p.ops[j]);
  }
  return PolynomialState(2, 2, laurent ? PolyKind::Laurent : PolyKind::Analytic,
                         std::move(lattice));
}

Protocol3D embed_2d_in_3d(const Protocol2DChoice &p) {
  if (p.picture != Picture::Analytic) {
    throw Error(ErrorCode::InvalidArgument,
                "only analytic choice protocols embed; shift the Laurent state first");
  }
  if (p.ops.size() != p.choices.size() + 1) {
    throw Error(ErrorCode::DimensionMismatch, "choice protocol needs one more op than choices");
  }
  const UnitaryMatrix swap = swap_last_two();
  const std::size_t n = p.choices.size();
  Protocol3D out;
  for (std::size_t k = 0; k <= n; ++k) {
    UnitaryMatrix op = embed_block(p.ops[k]);
    if (k > 0 && p.choices.choices[k - 1] == Variable::B) op = op * swap;
    if (k < n && p.choices.choices[k] == Variable::B) op = swap * op;
    out.ops.push_back(op);
  }
  return out;
}

Protocol3D random_protocol_3d(std::size_t steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Protocol3D p;
  for (std::size_t k = 0; k <= steps; ++k) p.ops.push_back(haar_random_unitary(3, rng()));
  return p;
}

Protocol2DChoice random_protocol_2d_choice(std::size_t steps, std::uint64_t seed,
                                           Picture picture) {
  std::mt19937_64 rng(seed);
  Protocol2DChoice p;
  p.picture = picture;
  for (std::size_t k = 0; k < steps; ++k) {
    p.choices.choices.push_back((rng() & 1U) != 0 ? Variable::B : Variable::A);
  }
  for (std::size_t k = 0; k <= steps; ++k) p.ops.push_back(haar_random_unitary(2, rng()));
  return p;
}

PolynomialState choice_laurent_to_analytic(const PolynomialState &state,
                                           const ChoiceVector &choices) {
  if (state.num_vars() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a bivariate state");
  const int counts[2] = {choices.count(Variable::A), choices.count(Variable::B)};
  PolynomialState::Terms out;
  for (const auto &[k, v] : state.terms()) {
    MultiIndex m{0, 0};
    for (std::size_t s = 0; s < 2; ++s) {
      const int shifted = k[s] + counts[s];
      if (shifted % 2 != 0 || shifted < 0 || k[s] > counts[s]) {
        throw Error(ErrorCode::IndefiniteParity,
                    "exponent does not fit " + std::to_string(counts[s]) + " calls",
                    {{"exp_a", k[0]}, {"exp_b", k[1]}, {"variable", static_cast<double>(s)}});
      }
      m[s] = shifted / 2;
    }
    out.emplace(m, v);
  }
  return PolynomialState(2, state.dim(), PolyKind::Analytic, std::move(out));
}

PolynomialState choice_analytic_to_laurent(const PolynomialState &state,
                                           const ChoiceVector &choices) {
  if (state.num_vars() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a bivariate state");
  if (state.kind() != PolyKind::Analytic) {
    throw Error(ErrorCode::BadSupport, "input is already a Laurent state");
  }
  const int counts[2] = {choices.count(Variable::A), choices.count(Variable::B)};
  PolynomialState::Terms out;
  for (const auto &[k, v] : state.terms()) {
    if (k[0] > counts[0] || k[1] > counts[1]) {
      throw Error(ErrorCode::BadSupport, "exponent exceeds the number of calls",
                  {{"exp_a", k[0]}, {"exp_b", k[1]}});
    }
    out.emplace(MultiIndex{2 * k[0] - counts[0], 2 * k[1] - counts[1]}, v);
  }
  return PolynomialState(2, state.dim(), PolyKind::Laurent, std::move(out));
}

// ---------------------------------------------------------------------------
// Necessary conditions for choice protocols

DiagnosticReport check_necessary_mqsp(const PolynomialState &state,
                                      const ChoiceVector &choices,
                                      const SignalConvention &convention,
                                      const Tolerances &tol) {
  if (state.num_vars() != 2 || state.dim() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "expected a bivariate qubit state");
  }
  const bool laurent = convention.picture == Picture::Laurent;
  const int counts[2] = {choices.count(Variable::A), choices.count(Variable::B)};
  const char *names[2] = {"a", "b"};
  DiagnosticReport report;

  if (!laurent) {
    Witness w;
    for (const auto &[k, v] : state.terms()) {
      if (!k.non_negative()) {
        w.indices = {k};
        break;
      }
    }
    report.add("non-negative", w.indices.empty(), w);
  }
  for (std::size_t var = 0; var < 2; ++var) {
    Witness w;
    w.note = "calls " + std::to_string(counts[var]);
    for (const auto &[k, v] : state.terms()) {
      const int power = laurent ? std::abs(k[var]) : k[var];
      if (power > counts[var]) {
        w.indices = {k};
        break;
      }
    }
    report.add(std::string("degree-bound-") + names[var], w.indices.empty(), w);
  }
  if (laurent) {
    for (std::size_t var = 0; var < 2; ++var) {
      Witness w;
      for (const auto &[k, v] : state.terms()) {
        if (std::abs(k[var] - counts[var]) % 2 != 0) {
          w.indices = {k};
          break;
        }
      }
      report.add(std::string("parity-") + names[var], w.indices.empty(), w);
    }
  }
  if (convention.basis == SignalBasis::Wz && convention.algebra == Algebra::XRotations) {
    Witness w;
    double worst = 0;
    for (const auto &[k, v] : state.terms()) {
      const double dev = std::max(std::abs(v[0].imag()), std::abs(v[1].real()));
      if (dev > worst) {
        worst = dev;
        w.indices = {k};
      }
    }
    w.magnitude = worst;
    report.add("wz-real-imag", worst <= tol.norm, w);
  }
  if (convention.basis == SignalBasis::Wx && convention.algebra == Algebra::ZRotations) {
    // Laurent: P(z) = P(1/z), Q(z) = -Q(1/z). Analytic: the same reflection
    // about the centre (n_a, n_b) / 2.
    const MultiIndex centre = laurent ? MultiIndex{0, 0} : MultiIndex{counts[0], counts[1]};
    Witness w;
    double worst = 0;
    for (const auto &[k, v] : state.terms()) {
      const MultiIndex mirror = centre - k;
      const CVector m = state.coefficient(mirror);
      const double dev = std::max(std::abs(v[0] - m[0]), std::abs(v[1] + m[1]));
      if (dev > worst) {
        worst = dev;
        w.indices = {k, mirror};
      }
    }
    w.magnitude = worst;
    report.add("wx-reciprocal", worst <= tol.norm, w);
  }
  return report;
}

}  // namespace qspforge
