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

#include <vector>

#include "cechain/diagnostic.hpp"
#include "cechain/model.hpp"

namespace cechain {

struct ValidationReport {
    std::vector<Diagnostic> diagnostics;

    /// No ERROR-severity entry.
    [[nodiscard]] bool ok() const { return !has_errors(diagnostics); }
};

/// Component rules: E101 dangling read/write, E301 out-port not served by
/// exactly one task, E302 duplicate names, E303 malformed compound,
/// E304 empty activation range.
[[nodiscard]] ValidationReport validate_component(const ComponentDefinition& component);

/// System rules E305..E313 and warnings W401/W402 over a resolved system.
[[nodiscard]] ValidationReport validate_system(const ResolvedSystem& system);

/// validate_component for every component in the system, then validate_system.
[[nodiscard]] ValidationReport validate_all(const ResolvedSystem& system);

}  // namespace cechain
