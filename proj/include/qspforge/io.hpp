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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "qspforge/diagnostics.hpp"
#include "qspforge/errors.hpp"
#include "qspforge/multivariate.hpp"
#include "qspforge/polystate.hpp"
#include "qspforge/univariate.hpp"

namespace qspforge::io {

using Json = nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1";

/// Parses text; syntax errors become Schema errors that name the line.
Json parse_json(std::string_view text);
Json load_json_file(const std::filesystem::path &path);
/// Two-space indented, trailing newline.
std::string dump(const Json &doc);

// States ---------------------------------------------------------------------

/// Components are numbers or exact rational strings such as "-122/37". With
/// "normalize": true the state is rescaled to unit total weight.
PolynomialState state_from_json(const Json &doc, const Tolerances &tol = {});
Json state_to_json(const PolynomialState &state);
bool is_state_document(const Json &doc);

// Protocols ------------------------------------------------------------------

using AnyProtocol = std::variant<Protocol1D, Protocol2DChoice, Protocol3D>;

AnyProtocol protocol_from_json(const Json &doc, const Tolerances &tol = {});
Json protocol_to_json(const AnyProtocol &protocol);
PolynomialState evaluate(const AnyProtocol &protocol);

// Reports --------------------------------------------------------------------

Json report_to_json(const DiagnosticReport &report);
Json error_to_json(const Error &error);

/// Parses "ab", "a,b" or ["a", "b"] into a choice vector.
ChoiceVector parse_choices(std::string_view text);
Json choices_to_json(const ChoiceVector &choices);

Picture parse_picture(std::string_view text);
SignalBasis parse_basis(std::string_view text);
Algebra parse_algebra(std::string_view text);

/// Recursive comparison: numbers within `tol`, everything else exactly.
/// Returns the JSON pointer of the first mismatch, or an empty string.
std::string first_difference(const Json &actual, const Json &expected, double tol);

}  // namespace qspforge::io
