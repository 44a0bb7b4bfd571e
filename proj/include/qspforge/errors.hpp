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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qspforge {

enum class ErrorCode {
  DimensionMismatch,
  InvalidArgument,
  NotUnitary,
  NotNormalized,
  ConventionViolated,
  IndefiniteParity,
  NotLowerable,
  ZeroEndpoint,
  BadSupport,
  NotAPolynomialState,
  Schema,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `details` carries the numeric
/// witnesses (ranks, residuals, offending term indices) that a caller or the
/// CLI can report without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message,
        std::map<std::string, double> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::map<std::string, double> &details() const noexcept { return details_; }

  /// Input/schema problems as opposed to violated mathematical preconditions.
  bool is_io_error() const noexcept {
    return code_ == ErrorCode::Schema || code_ == ErrorCode::Io;
  }

 private:
  ErrorCode code_;
  std::map<std::string, double> details_;
};

}  // namespace qspforge
