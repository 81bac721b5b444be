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

#include <cstdint>
#include <vector>

#include "cechain/model.hpp"
#include "cechain/time.hpp"

namespace cechain {

/// Knobs for random valid models. Used by property tests, the containment
/// sweep and the benchmark.
struct GeneratorLimits {
    int min_tasks = 2;
    int max_tasks = 6;
    int max_chain_stages = 3;
    int max_chains = 2;
    int min_hz = 1;
    int max_hz = 100;
    int max_prescaler = 10;
    Duration max_exec = std::chrono::milliseconds(20);
    bool compounds = true;
    bool sporadic = true;             // sporadic sources with interarrival bounds
    bool unbounded_sporadic = false;  // bare `sporadic` (not simulatable)
    bool cooperative = true;
    bool connection_delays = true;
    bool fractional = false;          // non-integer rates and optional syntax variants
};

struct GeneratedModel {
    std::vector<ComponentDefinition> components;
    SystemConfiguration config;
};

/// Builds a model that resolves and validates without errors. Deterministic in `seed`.
[[nodiscard]] GeneratedModel generate_model(std::uint64_t seed, const GeneratorLimits& limits = {});

}  // namespace cechain
