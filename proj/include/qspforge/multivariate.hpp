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

#include <cstdint>
#include <utility>
#include <vector>

#include "qspforge/diagnostics.hpp"
#include "qspforge/linalg.hpp"
#include "qspforge/polystate.hpp"
#include "qspforge/tolerances.hpp"
#include "qspforge/univariate.hpp"

namespace qspforge {

// Bivariate protocols. Variable a is exponent slot 0, b is slot 1.

/// Processing operators in U(3) interleaved with diag(1, a, b). ops[0] acts
/// first.
struct Protocol3D {
  std::vector<UnitaryMatrix> ops;

  std::size_t num_calls() const { return ops.empty() ? 0 : ops.size() - 1; }
};

enum class Variable { A = 0, B = 1 };

/// Which variable's signal operator is used at each call, in call order.
struct ChoiceVector {
  std::vector<Variable> choices;

  std::size_t size() const noexcept { return choices.size(); }
  /// Number of calls to `v`.
  int count(Variable v) const noexcept;
};

/// Single-qubit protocol with a classical choice of signal at every call:
/// diag(1, z_s) in the analytic picture, diag(1/z_s, z_s) in the Laurent one.
struct Protocol2DChoice {
  std::vector<UnitaryMatrix> ops;
  ChoiceVector choices;
  Picture picture = Picture::Analytic;
};

PolynomialState evaluate_protocol_3d(const Protocol3D &p);
PolynomialState evaluate_protocol_2d_choice(const Protocol2DChoice &p);

/// The same state in the three-level protocol: each op becomes diag(A', 1) and
/// every b-call is wrapped in the |1> <-> |2> swap, merged into the adjacent
/// operators. Analytic picture only.
Protocol3D embed_2d_in_3d(const Protocol2DChoice &p);

Protocol3D random_protocol_3d(std::size_t steps, std::uint64_t seed);
Protocol2DChoice random_protocol_2d_choice(std::size_t steps, std::uint64_t seed,
                                           Picture picture = Picture::Analytic);

/// Laurent <-> analytic correspondence for choice protocols: exponent k_s of
/// the Laurent state maps to (k_s + n_s) / 2, where n_s counts the calls to s.
/// Throws IndefiniteParity when some k_s - n_s is odd.
PolynomialState choice_laurent_to_analytic(const PolynomialState &state,
                                           const ChoiceVector &choices);
PolynomialState choice_analytic_to_laurent(const PolynomialState &state,
                                           const ChoiceVector &choices);

/// Necessary conditions for a bivariate qubit state to come from a choice
/// protocol with the given choices. Verdict ids: "degree-bound-a",
/// "degree-bound-b", "parity-a", "parity-b" (Laurent picture only),
/// "wz-real-imag" (Wz with X rotations), "wx-reciprocal" (Wx with Z rotations).
DiagnosticReport check_necessary_mqsp(const PolynomialState &state,
                                      const ChoiceVector &choices,
                                      const SignalConvention &convention,
                                      const Tolerances &tol = {});

// --- Decomposition of three-level states -----------------------------------

struct StepExtraction {
  UnitaryMatrix op;           // outermost processing operator
  PolynomialState lowered;    // state before the last signal call
};

/// Finds an orthonormal basis psi_0, psi_1, psi_2 with psi_2 orthogonal to the
/// a-axis coefficients, psi_1 to the b-axis coefficients and psi_0 to the
/// anti-diagonal, and undoes one step with it. Throws NotLowerable (ranks of
/// the three coefficient sets as details), NotNormalized or BadSupport.
StepExtraction extract_step_3d(const PolynomialState &state, const Tolerances &tol = {});

/// Verdicts "lowering-basis" (a basis as above exists) and, when all three
/// corners are non-zero, the corner orthogonality relations
/// "corner-b-vs-a-axis", "corner-a-vs-b-axis", "corner-origin-vs-diagonal".
DiagnosticReport check_extraction_conditions(const PolynomialState &state,
                                             const Tolerances &tol = {});

/// Full decomposition for states whose coefficients of 1, a^n and b^n are all
/// non-zero. Throws ZeroEndpoint otherwise, NotNormalized for non-states.
Protocol3D decompose_3d(const PolynomialState &state, const Tolerances &tol = {});

// --- Unimplementability certificates ----------------------------------------

/// NotImplementable iff the a-axis and b-axis coefficient sets of a qubit
/// bivariate state both have rank 2; Inconclusive otherwise. Verdict ids
/// "a-axis-rank", "b-axis-rank".
DiagnosticReport check_unimplementable(const PolynomialState &state,
                                       const Tolerances &tol = {});

struct QGammaResult {
  double q = 0;
  double max_a = 0;  // max |det[g_{x,0} g_{y,0}]|
  double max_b = 0;  // max |det[g_{0,x} g_{0,y}]|
  std::pair<int, int> argmax_a{0, 0};
  std::pair<int, int> argmax_b{0, 0};
  bool normalized_input = true;  // false when the input had to be rescaled
};

/// min over the two axes of the largest 2x2 determinant between axis
/// coefficients, computed on the input rescaled to unit total weight. Throws
/// NotAPolynomialState when the rescaled input is not normalized.
QGammaResult q_gamma(const PolynomialState &state, const Tolerances &tol = {});

/// q / 4: no implementable state lies within this sup-norm distance.
double inapprox_radius(const PolynomialState &state, const Tolerances &tol = {});

}  // namespace qspforge
