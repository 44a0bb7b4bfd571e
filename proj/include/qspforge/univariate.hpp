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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qspforge/diagnostics.hpp"
#include "qspforge/linalg.hpp"
#include "qspforge/polystate.hpp"
#include "qspforge/tolerances.hpp"

namespace qspforge {

// Laurent: signal diag(z^-1, z).  Analytic: signal diag(1, z).
enum class Picture { Laurent, Analytic };
// Wx conjugates the signal operator by a Hadamard.
enum class SignalBasis { Wz, Wx };
enum class Algebra { FullSU2, XRotations, ZRotations };

std::string_view to_string(Picture p);
std::string_view to_string(SignalBasis b);
std::string_view to_string(Algebra a);

struct SignalConvention {
  Picture picture = Picture::Analytic;
  SignalBasis basis = SignalBasis::Wz;
  Algebra algebra = Algebra::FullSU2;

  friend bool operator==(const SignalConvention &, const SignalConvention &) = default;
};

/// Whether the rotation algebra is one with a known characterization: X
/// rotations with the Wz signal, Z rotations with the Wx signal, or the full
/// SU(2) algebra with either.
bool is_characterized(const SignalConvention &c);

/// ops[0] acts first; ops.size() = number of signal calls + 1. When `phases`
/// is present, ops[k] is exp(i phases[k] X) (XRotations) or exp(i phases[k] Z)
/// (ZRotations).
struct Protocol1D {
  SignalConvention convention;
  std::vector<UnitaryMatrix> ops;
  std::optional<std::vector<double>> phases;

  std::size_t num_calls() const { return ops.empty() ? 0 : ops.size() - 1; }
};

/// Builds the rotation operators for `phases` under a rotation algebra.
Protocol1D make_rotation_protocol(const SignalConvention &convention,
                                  std::span<const double> phases);

/// Checks shape and, when phases are present, that each op matches its phase.
void validate_protocol(const Protocol1D &p, const Tolerances &tol = {});

/// Random protocol with `steps` signal calls: Haar ops for FullSU2, uniform
/// phases for the rotation algebras.
Protocol1D random_protocol_1d(const SignalConvention &convention, std::size_t steps,
                              std::uint64_t seed);

PolynomialState evaluate_protocol_1d(const Protocol1D &p);

/// Verdict ids: "laurent-parity", "laurent-wz-real-imag",
/// "laurent-wx-reciprocal", "analytic-non-negative", "analytic-wz-real-imag",
/// "analytic-wx-reciprocal".
DiagnosticReport classify_state_1d(const PolynomialState &state, const Tolerances &tol = {});

/// The verdict ids a state must pass to be implementable under `convention`.
std::vector<std::string_view> convention_conditions(const SignalConvention &convention);

bool satisfies(const DiagnosticReport &classification, const SignalConvention &convention);

/// Peels the outermost processing operator off one signal call at a time. The
/// result re-evaluates to the input; errors: NotNormalized, IndefiniteParity,
/// ConventionViolated.
Protocol1D synthesize_1d(const PolynomialState &state, const SignalConvention &convention,
                         const Tolerances &tol = {});

/// |g_{-n}> + |g_{-n+2}> z + ... + |g_n> z^n for a definite-parity Laurent
/// state of degree n. Throws IndefiniteParity.
PolynomialState laurent_to_analytic_1d(const PolynomialState &state);

/// Inverse map k -> 2k - n. `num_calls` defaults to the state's degree and must
/// be at least that.
PolynomialState analytic_to_laurent_1d(const PolynomialState &state,
                                       std::optional<int> num_calls = std::nullopt);

/// Conjugates by Hadamards, absorbing the boundary ones into the first and
/// last operators. Evaluation is preserved; the algebra becomes FullSU2 when
/// there is at least one signal call.
Protocol1D convert_convention_1d(const Protocol1D &p, SignalBasis target);

}  // namespace qspforge
