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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qspforge/polystate.hpp"

namespace qspforge {

/// Evidence attached to a verdict: offending lattice sites, a rank, or a
/// magnitude (inner product, deviation).
struct Witness {
  std::vector<MultiIndex> indices;
  std::optional<int> rank;
  std::optional<double> magnitude;
  std::string note;
};

struct Verdict {
  std::string id;
  bool passed = false;
  Witness witness;
};

enum class Implementability { NotImplementable, Inconclusive };

std::string_view to_string(Implementability v);

struct DiagnosticReport {
  std::vector<Verdict> verdicts;
  std::optional<Implementability> implementability;

  bool all_passed() const;
  /// nullptr when no verdict with that id exists.
  const Verdict *find(std::string_view id) const;
  void add(std::string id, bool passed, Witness witness = {});
};

}  // namespace qspforge
