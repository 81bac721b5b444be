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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cechain/analyze.hpp"
#include "cechain/model.hpp"
#include "cechain/time.hpp"

namespace cechain::sim {

enum class PhasePolicy { Zero, Random };
enum class ExecPolicy { Bcet, Wcet, Uniform };

struct SimConfig {
    Duration duration{std::chrono::seconds(1)};
    std::uint64_t seed = 0;
    PhasePolicy phase = PhasePolicy::Zero;
    ExecPolicy exec = ExecPolicy::Uniform;
};

enum class EventKind { TaskActivated, TaskCompleted, SamplePublished, SampleRead, SampleSkipped };

/// One trace entry. `port` is an out-port for SamplePublished and an in-port
/// otherwise. A SampleSkipped without a task is a register overwrite; with a
/// task it is a trigger that hit a busy task and was dropped.
struct SimEvent {
    Duration time{0};
    EventKind kind = EventKind::TaskActivated;
    std::size_t instance = 0;
    std::optional<std::size_t> task;
    std::optional<std::size_t> port;
    std::int64_t sample = 0;  // per-out-port id starting at 1; 0 = none
    std::int64_t run = 0;     // per-task activation counter starting at 1; 0 = none

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

class SimulationUnsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Runs the activation semantics until cfg.duration (exclusive). Fully
/// determined by (system, cfg). Throws SimulationUnsupported for a sporadic
/// task with neither interarrival bounds nor a fixed rate, or a non-positive
/// duration.
[[nodiscard]] std::vector<SimEvent> simulate(const ResolvedSystem& system, const SimConfig& cfg);

struct ChainLatencySample {
    std::size_t chain = 0;
    std::int64_t source_sample = 0;
    Duration published{0};
    std::optional<Duration> latency;  // empty: no reaction before the end of the run
    bool dropped = false;             // never reflected itself, only through a later overwrite
    bool warmup = false;              // published before every chain task had run once
};

/// First-to-first reaction for every publication at the chain head.
[[nodiscard]] std::vector<ChainLatencySample> measure_chain(const ResolvedSystem& system,
                                                            const std::vector<SimEvent>& events, std::size_t chain);

enum class Containment { Contained, Violation, Inconclusive };

struct ComparisonVerdict {
    Containment verdict = Containment::Inconclusive;
    std::size_t count = 0;
    Duration observed_min{0};
    Duration observed_max{0};
    double observed_mean_ms = 0.0;
    Duration observed_p99{0};
    LatencyInterval analytic;
};

/// Latency statistics over measured, post-warm-up samples.
struct LatencyStats {
    std::size_t count = 0;
    std::size_t dropped = 0;
    Duration min{0};
    Duration max{0};
    double mean_ms = 0.0;
    Duration p99{0};
};

[[nodiscard]] LatencyStats summarize(const std::vector<ChainLatencySample>& samples);

/// CONTAINED iff every measured latency lies in [best, worst].
[[nodiscard]] ComparisonVerdict compare(const LatencyInterval& analysis, const std::vector<ChainLatencySample>& samples);

[[nodiscard]] const char* to_string(EventKind k);
[[nodiscard]] const char* to_string(Containment c);

/// JSON-lines trace: a header object {"traceVersion":1,...} then one event per line.
void write_trace_jsonl(std::ostream& out, const ResolvedSystem& system, const SimConfig& cfg,
                       const std::vector<SimEvent>& events);

}  // namespace cechain::sim
