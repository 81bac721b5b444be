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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cechain/diagnostic.hpp"
#include "cechain/model.hpp"

namespace cechain::dsl {

template <typename T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
};

/// Parses a `.ccd` component definition. Returns no value if any ERROR was
/// reported; recovers at item boundaries so several errors surface at once.
[[nodiscard]] ParseResult<ComponentDefinition> parse_component_definition(std::string_view text,
                                                                          std::string_view file);

/// Parses a `.csys` system configuration. Names stay unresolved; see resolve().
[[nodiscard]] ParseResult<SystemConfiguration> parse_system_configuration(std::string_view text,
                                                                          std::string_view file);

/// Canonical text; parse(print(m)) == m for every valid m.
[[nodiscard]] std::string pretty_print(const ComponentDefinition& component);
[[nodiscard]] std::string pretty_print(const SystemConfiguration& system);

}  // namespace cechain::dsl
