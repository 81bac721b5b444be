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

#include "cechain/diagnostic.hpp"

#include <algorithm>

namespace cechain {

bool SourceSpan::same_location(const SourceSpan& other) const {
    return file == other.file && start_line == other.start_line && start_col == other.start_col &&
           end_line == other.end_line && end_col == other.end_col;
}

const char* to_string(Severity s) {
    switch (s) {
        case Severity::Error:
            return "error";
        case Severity::Warning:
            return "warning";
        case Severity::Info:
            return "info";
    }
    return "?";
}

std::string format(const Diagnostic& d) {
    std::string out;
    if (!d.span.file.empty()) {
        out += d.span.file;
        out += ':';
    }
    if (d.span.known()) {
        out += std::to_string(d.span.start_line) + ':' + std::to_string(d.span.start_col) + ':';
    }
    if (!out.empty()) {
        out += ' ';
    }
    out += to_string(d.severity);
    out += ' ';
    out += d.code;
    out += ": ";
    out += d.message;
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

Diagnostic make_error(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::Error, std::move(code), std::move(message), std::move(span)};
}

Diagnostic make_warning(std::string code, std::string message, SourceSpan span) {
    return Diagnostic{Severity::Warning, std::move(code), std::move(message), std::move(span)};
}

}  // namespace cechain
