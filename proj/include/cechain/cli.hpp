/*
 * Copyright 2026 The cechain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cechain::cli {

/// Exit-code contract: CI can gate on validation (1) and spec regressions (2)
/// separately.
enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kSpecViolation = 2,
    kUsageError = 3,
};

/// Runs `cechain <command> ...`. `args` excludes the program name.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cechain::cli
