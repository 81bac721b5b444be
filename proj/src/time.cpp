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

#include "cechain/time.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace cechain {

Duration period_of(Hertz f) {
    return Duration{std::llround(1e9 / f.value)};
}

std::optional<Duration> parse_duration(std::string_view literal, TimeUnit unit) {
    const auto scale = static_cast<std::int64_t>(unit);
    const auto dot = literal.find('.');
    const std::string_view whole = literal.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : literal.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
        return std::nullopt;
    }

    std::int64_t value = 0;
    for (const char c : whole) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        if (value > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
            return std::nullopt;
        }
        value = value * 10 + (c - '0');
    }
    if (value > std::numeric_limits<std::int64_t>::max() / scale) {
        return std::nullopt;
    }
    value *= scale;

    std::int64_t place = scale;
    for (const char c : frac) {
        if (c < '0' || c > '9') {
            return std::nullopt;
        }
        const int digit = c - '0';
        if (place % 10 != 0) {
            // finer than one nanosecond
            if (digit != 0) {
                return std::nullopt;
            }
            continue;
        }
        place /= 10;
        value += digit * place;
    }
    return Duration{value};
}

std::string format_duration(Duration d, TimeUnit unit) {
    const auto scale = static_cast<std::int64_t>(unit);
    std::int64_t ns = d.count();
    std::string out;
    if (ns < 0) {
        out.push_back('-');
        ns = -ns;
    }
    out += std::to_string(ns / scale);
    std::int64_t rest = ns % scale;
    if (rest != 0) {
        std::string digits;
        for (std::int64_t place = scale / 10; place > 0 && rest != 0; place /= 10) {
            digits.push_back(static_cast<char>('0' + rest / place));
            rest %= place;
        }
        out += '.';
        out += digits;
    }
    return out;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    return std::string(buf.data(), ec == std::errc{} ? end : buf.data());
}

}  // namespace cechain
