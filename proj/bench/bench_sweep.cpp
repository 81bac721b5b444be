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

// Serial reference vs OpenMP containment sweep over generated systems.

#include <benchmark/benchmark.h>

#include "cechain/sweep.hpp"

namespace {

cechain::SweepConfig bench_config() {
    cechain::SweepConfig cfg;
    cfg.systems = 8;
    cfg.seeds_per_system = 4;
    cfg.duration = std::chrono::seconds(5);
    return cfg;
}

const std::vector<cechain::SweepSystem>& bench_systems() {
    static const auto systems = cechain::prepare_sweep(bench_config());
    return systems;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto cfg = bench_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cechain::run_sweep_serial(bench_systems(), cfg));
    }
}

void BM_SweepParallel(benchmark::State& state) {
    const auto cfg = bench_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(cechain::run_sweep_parallel(bench_systems(), cfg));
    }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
