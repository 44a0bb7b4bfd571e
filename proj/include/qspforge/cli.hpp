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

#include <ostream>
#include <string>
#include <vector>

namespace qspforge {

/// Runs the command line tool. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 2 when a mathematical precondition fails,
/// 1 on I/O, schema or usage errors and on --verify mismatches.
int cli_run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qspforge
