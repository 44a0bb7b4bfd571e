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

#include <string_view>

namespace qspforge {

/// Numerical thresholds shared by every module. Defaults can be overridden per
/// call, or process-wide through the QSPFORGE_TOL environment variable (read
/// by the CLI only).
struct Tolerances {
  double unitary = 1e-10;   // max-entry of |U^dag U - I|
  double rank = 1e-9;       // residual norm below which a direction is dropped
  double norm = 1e-9;       // normalization residual accepted as normalized
  double endpoint = 1e-9;   // corner coefficient norm treated as zero
  double prune = 1e-14;     // coefficients below this norm are not stored
};

/// Parses "key=value[,key=value...]" with keys unitary, rank, norm, endpoint,
/// prune. Unknown keys or malformed numbers raise Error(Schema).
Tolerances parse_tolerances(std::string_view list, Tolerances base = {});

}  // namespace qspforge
