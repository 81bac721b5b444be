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

#include "cechain/sweep.hpp"

#include <algorithm>

#include "cechain/validate.hpp"

namespace cechain {

namespace {

std::vector<SweepOutcome> run_job(const SweepSystem& sys, std::uint64_t sim_seed, const SweepConfig& cfg) {
    sim::SimConfig sc;
    sc.duration = cfg.duration;
    sc.seed = sim_seed;
    sc.phase = cfg.phase;
    sc.exec = cfg.exec;
    const auto events = sim::simulate(sys.system, sc);

    std::vector<SweepOutcome> out;
    for (const auto& ca : sys.chains) {
        if (!ca.latency.bounded()) {
            continue;
        }
        const auto samples = sim::measure_chain(sys.system, events, ca.chain);
        const auto v = sim::compare(ca.latency, samples);
        SweepOutcome o;
        o.generator_seed = sys.generator_seed;
        o.sim_seed = sim_seed;
        o.chain = ca.chain;
        o.verdict = v.verdict;
        o.samples = v.count;
        o.observed_min = v.observed_min;
        o.observed_max = v.observed_max;
        o.best = ca.latency.best;
        o.worst = ca.latency.worst;
        out.push_back(o);
    }
    return out;
}

std::uint64_t sim_seed_of(std::size_t k) { return static_cast<std::uint64_t>(k) + 1; }

}  // namespace

std::vector<SweepSystem> prepare_sweep(const SweepConfig& cfg) {
    std::vector<SweepSystem> systems;
    for (std::uint64_t seed = cfg.first_system_seed; systems.size() < cfg.systems; ++seed) {
        auto model = generate_model(seed, cfg.limits);
        auto resolved = resolve(model.components, model.config);
        if (!resolved.ok() || !validate_all(*resolved.system).ok()) {
            continue;
        }
        SweepSystem s;
        s.generator_seed = seed;
        s.system = std::move(*resolved.system);
        s.chains = analyze(s.system).chains;
        if (std::none_of(s.chains.begin(), s.chains.end(),
                         [](const ChainAnalysis& c) { return c.latency.bounded(); })) {
            continue;
        }
        systems.push_back(std::move(s));
    }
    return systems;
}

std::vector<SweepOutcome> run_sweep_serial(const std::vector<SweepSystem>& systems, const SweepConfig& cfg) {
    std::vector<SweepOutcome> all;
    for (const auto& sys : systems) {
        for (std::size_t k = 0; k < cfg.seeds_per_system; ++k) {
            auto part = run_job(sys, sim_seed_of(k), cfg);
            all.insert(all.end(), part.begin(), part.end());
        }
    }
    return all;
}

std::vector<SweepOutcome> run_sweep_parallel(const std::vector<SweepSystem>& systems, const SweepConfig& cfg) {
    const auto jobs = static_cast<std::int64_t>(systems.size() * cfg.seeds_per_system);
    std::vector<std::vector<SweepOutcome>> parts(static_cast<std::size_t>(jobs));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t j = 0; j < jobs; ++j) {
        const auto idx = static_cast<std::size_t>(j);
        parts[idx] = run_job(systems[idx / cfg.seeds_per_system], sim_seed_of(idx % cfg.seeds_per_system), cfg);
    }
    std::vector<SweepOutcome> all;
    for (auto& p : parts) {
        all.insert(all.end(), p.begin(), p.end());
    }
    return all;
}

}  // namespace cechain
