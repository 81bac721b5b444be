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

#include <ostream>
#include <string>
#include <vector>

namespace cechain {

/// Location of a construct in a DSL file. 1-based, inclusive start.
struct SourceSpan {
    std::string file;
    int start_line = 0;
    int start_col = 0;
    int end_line = 0;
    int end_col = 0;

    [[nodiscard]] bool known() const { return start_line > 0; }
    [[nodiscard]] bool same_location(const SourceSpan& other) const;

    // Spans are annotations: two model elements that differ only in where
    // they were written compare equal.
    friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }
};

enum class Severity { Error, Warning, Info };

/// One entry of the diagnostics catalog in docs/diagnostics.md.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;
    SourceSpan span;
};

[[nodiscard]] const char* to_string(Severity s);

/// "file:line:col: error E301: message"
[[nodiscard]] std::string format(const Diagnostic& d);

[[nodiscard]] bool has_errors(const std::vector<Diagnostic>& diags);

[[nodiscard]] Diagnostic make_error(std::string code, std::string message, SourceSpan span);
[[nodiscard]] Diagnostic make_warning(std::string code, std::string message, SourceSpan span);

}  // namespace cechain
