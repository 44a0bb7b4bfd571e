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

#include "qspforge/diagnostics.hpp"

#include <algorithm>

namespace qspforge {

std::string_view to_string(Implementability v) {
  switch (v) {
    case Implementability::NotImplementable:
      return "NotImplementable";
    case Implementability::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

bool DiagnosticReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict &v) { return v.passed; });
}

const Verdict *DiagnosticReport::find(std::string_view id) const {
  auto it = std::find_if(verdicts.begin(), verdicts.end(),
                         [id](const Verdict &v) { return v.id == id; });
  return it == verdicts.end() ? nullptr : &*it;
}

void DiagnosticReport::add(std::string id, bool passed, Witness witness) {
  verdicts.push_back({std::move(id), passed, std::move(witness)});
}

}  // namespace qspforge
