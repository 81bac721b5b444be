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

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cechain {

/// All model and simulation time is integral nanoseconds.
using Duration = std::chrono::nanoseconds;

/// Activation frequency in Hz.
struct Hertz {
    double value = 0.0;

    friend bool operator==(const Hertz&, const Hertz&) = default;
    friend auto operator<=>(const Hertz&, const Hertz&) = default;
};

/// Period of a frequency, rounded to the nearest nanosecond. Analyzer and
/// simulator both go through this function so their arithmetic agrees.
[[nodiscard]] Duration period_of(Hertz f);

[[nodiscard]] inline double to_seconds(Duration d) { return static_cast<double>(d.count()) * 1e-9; }
[[nodiscard]] inline double to_millis(Duration d) { return static_cast<double>(d.count()) * 1e-6; }

/// Decimal unit scales understood by the DSL (nanoseconds per unit).
enum class TimeUnit : std::int64_t { Seconds = 1'000'000'000, Millis = 1'000'000, Micros = 1'000 };

/// Parses an unsigned decimal literal ("12", "0.025") into an exact number
/// of nanoseconds at the given unit. Fails on excess precision or overflow.
[[nodiscard]] std::optional<Duration> parse_duration(std::string_view literal, TimeUnit unit);

/// Exact decimal rendering of a duration in the given unit ("0.0025").
[[nodiscard]] std::string format_duration(Duration d, TimeUnit unit);

/// Shortest decimal that round-trips through strtod.
[[nodiscard]] std::string format_number(double v);

}  // namespace cechain
