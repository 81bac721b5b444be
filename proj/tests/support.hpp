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

// Shared helpers for the unit tests and the acceptance binary.

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cechain/dsl.hpp"
#include "cechain/model.hpp"
#include "cechain/validate.hpp"

namespace cechain::testing {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string example(const std::string& name) { return std::string(CECHAIN_EXAMPLES_DIR) + "/" + name; }

inline const std::vector<std::string>& navigation_components() {
    static const std::vector<std::string> files = {"Base.ccd", "Laser.ccd", "ObstacleAvoidance.ccd", "Mapper.ccd",
                                                   "Planner.ccd"};
    return files;
}

/// CLI argument list: every navigation component plus the given system file.
inline std::vector<std::string> navigation_args(const std::string& system_file) {
    std::vector<std::string> args;
    for (const auto& f : navigation_components()) {
        args.push_back(example(f));
    }
    args.push_back(example(system_file));
    return args;
}

inline ComponentDefinition component(const std::string& text) {
    auto r = dsl::parse_component_definition(text, "test.ccd");
    if (!r.value) {
        throw std::runtime_error("component fixture does not parse: " +
                                 (r.diagnostics.empty() ? std::string() : format(r.diagnostics.front())));
    }
    return *r.value;
}

inline SystemConfiguration system_config(const std::string& text) {
    auto r = dsl::parse_system_configuration(text, "test.csys");
    if (!r.value) {
        throw std::runtime_error("system fixture does not parse: " +
                                 (r.diagnostics.empty() ? std::string() : format(r.diagnostics.front())));
    }
    return *r.value;
}

/// Parses and resolves; throws if resolution fails. Validation is left to the caller.
inline ResolvedSystem build(const std::vector<std::string>& components, const std::string& system) {
    std::vector<ComponentDefinition> library;
    for (const auto& c : components) {
        library.push_back(component(c));
    }
    auto r = resolve(library, system_config(system));
    if (!r.system) {
        throw std::runtime_error("fixture does not resolve: " +
                                 (r.diagnostics.empty() ? std::string() : format(r.diagnostics.front())));
    }
    return *r.system;
}

inline ResolvedSystem navigation(const std::string& system_file = "navigation.csys") {
    std::vector<std::string> texts;
    for (const auto& f : navigation_components()) {
        texts.push_back(read_text(example(f)));
    }
    return build(texts, read_text(example(system_file)));
}

/// Error and warning codes in report order.
inline std::vector<std::string> codes(const std::vector<Diagnostic>& diags) {
    std::vector<std::string> out;
    for (const auto& d : diags) {
        out.push_back(d.code);
    }
    return out;
}

}  // namespace cechain::testing
