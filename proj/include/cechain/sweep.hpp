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

#include "cechain/analyze.hpp"
#include "cechain/generate.hpp"
#include "cechain/model.hpp"
#include "cechain/sim.hpp"

namespace cechain {

/// Randomized soundness check: analytic intervals against simulated runs.
struct SweepConfig {
    std::uint64_t first_system_seed = 1;
    std::size_t systems = 20;
    std::size_t seeds_per_system = 10;
    Duration duration = std::chrono::seconds(30);
    sim::PhasePolicy phase = sim::PhasePolicy::Random;
    sim::ExecPolicy exec = sim::ExecPolicy::Uniform;
    GeneratorLimits limits;
};

/// A generated system that validates and has at least one bounded chain.
struct SweepSystem {
    std::uint64_t generator_seed = 0;
    ResolvedSystem system;
    std::vector<ChainAnalysis> chains;
};

struct SweepOutcome {
    std::uint64_t generator_seed = 0;
    std::uint64_t sim_seed = 0;
    std::size_t chain = 0;
    sim::Containment verdict = sim::Containment::Inconclusive;
    std::size_t samples = 0;
    Duration observed_min{0};
    Duration observed_max{0};
    Duration best{0};
    std::optional<Duration> worst;

    friend bool operator==(const SweepOutcome&, const SweepOutcome&) = default;
};

/// Draws generator seeds from cfg.first_system_seed upward and keeps the
/// first cfg.systems models that validate and have a bounded chain.
[[nodiscard]] std::vector<SweepSystem> prepare_sweep(const SweepConfig& cfg);

/// Reference implementation: one (system, seed) job after another.
[[nodiscard]] std::vector<SweepOutcome> run_sweep_serial(const std::vector<SweepSystem>& systems,
                                                         const SweepConfig& cfg);

/// Same jobs distributed over OpenMP threads; output order and content are
/// identical to run_sweep_serial.
[[nodiscard]] std::vector<SweepOutcome> run_sweep_parallel(const std::vector<SweepSystem>& systems,
                                                           const SweepConfig& cfg);

}  // namespace cechain
