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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cechain/diagnostic.hpp"
#include "cechain/model.hpp"
#include "cechain/time.hpp"

namespace cechain {

// ---------------------------------------------------------------------------
// Frequency propagation
// ---------------------------------------------------------------------------

enum class UnknownReason { SporadicUnbounded, UnresolvedCycle, NoInput };

struct TaskFrequency {
    TaskHandle task;
    std::optional<Hertz> value;
    UnknownReason reason = UnknownReason::NoInput;  // meaningful only when value is empty

    [[nodiscard]] bool known() const { return value.has_value(); }
};

/// Fixed point over the data-trigger graph. One entry per task, in
/// ResolvedSystem::tasks() order.
[[nodiscard]] std::vector<TaskFrequency> propagate_frequencies(const ResolvedSystem& system);

// ---------------------------------------------------------------------------
// Sampling classification
// ---------------------------------------------------------------------------

enum class SamplingKind { Synchronous, Oversampling, Undersampling, Unknown };

/// DataTriggered: the consumer is activated by this link (prescaled).
/// Register: the consumer reads the link's latest value when it runs.
enum class LinkMode { DataTriggered, Register };

struct SamplingClass {
    std::size_t connection = 0;
    OutPortHandle producer;
    TaskHandle consumer;
    LinkMode mode = LinkMode::Register;
    SamplingKind kind = SamplingKind::Unknown;
    double ratio = 1.0;  // max(f_c, f_p) / min(f_c, f_p), or the prescaler
};

/// One entry per (connection, task reading the connection's target).
[[nodiscard]] std::vector<SamplingClass> classify_sampling(const ResolvedSystem& system,
                                                           std::span<const TaskFrequency> frequencies);

// ---------------------------------------------------------------------------
// Activation patterns
// ---------------------------------------------------------------------------

/// Spacing of a task's activations or publications: any n >= 1 consecutive
/// gaps span [n*min_gap - jitter, n*max_gap + jitter].
struct ActivationPattern {
    Duration min_gap{0};
    Duration max_gap{0};
    Duration jitter{0};

    [[nodiscard]] Duration span_upper(std::int64_t n) const { return n * max_gap + jitter; }
    [[nodiscard]] Duration span_lower(std::int64_t n) const {
        return std::max(Duration{0}, n * min_gap - jitter);
    }
};

enum class BlockingReason { SporadicUnbounded, UnknownTiming, ActivationLoss, Unreachable };

struct TaskTiming {
    TaskHandle task;
    std::optional<ActivationPattern> activations;   // empty: unknown
    std::optional<ActivationPattern> publications;  // empty: unknown or lossy
    Duration blocking{0};                            // cooperative queueing bound
    bool loss_free = false;                          // no trigger can hit a busy task
    BlockingReason reason = BlockingReason::UnknownTiming;
};

/// Activation/publication spacing for every task, in tasks() order.
[[nodiscard]] std::vector<TaskTiming> derive_timing(const ResolvedSystem& system);

// ---------------------------------------------------------------------------
// Chain latency
// ---------------------------------------------------------------------------

/// First-to-first end-to-end latency bounds.
struct LatencyInterval {
    Duration best{0};
    std::optional<Duration> worst;  // empty: unbounded
    std::optional<BlockingReason> reason;

    [[nodiscard]] bool bounded() const { return worst.has_value(); }
    [[nodiscard]] std::optional<Duration> jitter() const {
        return worst ? std::optional<Duration>(*worst - best) : std::nullopt;
    }
};

/// Contribution of one hop (data flowing into the writer of stage i+1).
struct HopLatency {
    std::size_t connection = 0;
    TaskHandle consumer;
    LinkMode mode = LinkMode::Register;
    Duration best{0};
    std::optional<Duration> worst;
    std::optional<BlockingReason> reason;
};

enum class Verdict { MeetsSpec, ViolatesSpec, NoSpec, Inconclusive };

struct ChainAnalysis {
    std::size_t chain = 0;
    LatencyInterval latency;
    std::vector<HopLatency> hops;
    Verdict verdict = Verdict::NoSpec;
};

[[nodiscard]] ChainAnalysis chain_latency(const ResolvedSystem& system, std::size_t chain,
                                          std::span<const TaskTiming> timing);

[[nodiscard]] Verdict check_spec(const LatencyInterval& interval, const E2ELatencySpec& spec);

// ---------------------------------------------------------------------------
// Full report
// ---------------------------------------------------------------------------

struct AnalysisReport {
    std::vector<TaskFrequency> frequencies;
    std::vector<SamplingClass> sampling;
    std::vector<ChainAnalysis> chains;
    std::vector<TaskTiming> timing;
    /// W403..W406 in canonical order.
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool any_violation() const;
};

/// Runs every analysis. Chains are analyzed in parallel when OpenMP is
/// available; the result does not depend on the thread count.
[[nodiscard]] AnalysisReport analyze(const ResolvedSystem& system);

/// Analyzes a single named chain only (frequencies and sampling are still complete).
[[nodiscard]] AnalysisReport analyze(const ResolvedSystem& system, std::span<const std::size_t> chains);

[[nodiscard]] const char* to_string(UnknownReason r);
[[nodiscard]] const char* to_string(SamplingKind k);
[[nodiscard]] const char* to_string(LinkMode m);
[[nodiscard]] const char* to_string(BlockingReason r);
[[nodiscard]] const char* to_string(Verdict v);

}  // namespace cechain
