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

#include <stdexcept>
#include <string>

#include "qspforge/errors.hpp"
#include "qspforge/tolerances.hpp"

namespace qspforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ConventionViolated: return "ConventionViolated";
    case ErrorCode::IndefiniteParity: return "IndefiniteParity";
    case ErrorCode::NotLowerable: return "NotLowerable";
    case ErrorCode::ZeroEndpoint: return "ZeroEndpoint";
    case ErrorCode::BadSupport: return "BadSupport";
    case ErrorCode::NotAPolynomialState: return "NotAPolynomialState";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Tolerances parse_tolerances(std::string_view list, Tolerances base) {
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::Schema, "tolerance entry '" + std::string(item) + "' lacks '='");
    }
    const std::string_view key = item.substr(0, eq);
    const std::string text(item.substr(eq + 1));
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception &) {
      throw Error(ErrorCode::Schema, "bad tolerance value '" + text + "'");
    }
    if (!(value > 0)) throw Error(ErrorCode::Schema, "tolerances must be positive");
    if (key == "unitary") base.unitary = value;
    else if (key == "rank") base.rank = value;
    else if (key == "norm") base.norm = value;
    else if (key == "endpoint") base.endpoint = value;
    else if (key == "prune") base.prune = value;
    else throw Error(ErrorCode::Schema, "unknown tolerance key '" + std::string(key) + "'");
  }
  return base;
}

}  // namespace qspforge
