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

#include <string>

#include <nlohmann/json.hpp>

#include "cechain/analyze.hpp"
#include "cechain/model.hpp"

namespace cechain {

/// Stable report shape, "reportVersion": 1. See docs/schemas/report.schema.json.
[[nodiscard]] nlohmann::ordered_json report_to_json(const ResolvedSystem& system, const AnalysisReport& report);

/// Plain-text report: task frequencies, link sampling, chain latencies.
[[nodiscard]] std::string report_to_text(const ResolvedSystem& system, const AnalysisReport& report);

/// Neutral per-task activation table for downstream code generators,
/// "tableVersion": 1. See docs/schemas/activation-table.schema.json.
[[nodiscard]] nlohmann::ordered_json activation_table(const ResolvedSystem& system);

[[nodiscard]] nlohmann::ordered_json diagnostic_to_json(const Diagnostic& d);

}  // namespace cechain
