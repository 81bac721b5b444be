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

#include "cechain/analyze.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#ifdef CECHAIN_HAVE_OPENMP
#include <omp.h>
#endif

namespace cechain {

namespace {

/// Flat task numbering plus the lookups every analysis needs.
class TaskIndex {
public:
    explicit TaskIndex(const ResolvedSystem& s) : s_(s), tasks_(s.tasks()) {
        std::size_t offset = 0;
        for (const auto& inst : s.instances) {
            offsets_.push_back(offset);
            offset += inst.tasks.size();
        }
    }

    [[nodiscard]] std::size_t size() const { return tasks_.size(); }
    [[nodiscard]] std::size_t of(TaskHandle t) const { return offsets_[t.instance] + t.task; }
    [[nodiscard]] TaskHandle at(std::size_t i) const { return tasks_[i]; }

    /// Connection feeding a plain in-port, if any (first one when invalid).
    [[nodiscard]] std::optional<std::size_t> feeder(InPortHandle p) const {
        for (std::size_t i = 0; i < s_.connections.size(); ++i) {
            if (s_.connections[i].to == p) {
                return i;
            }
        }
        return std::nullopt;
    }

    /// Flat index of the task publishing into a plain in-port.
    [[nodiscard]] std::optional<std::size_t> producer(InPortHandle p) const {
        if (auto c = feeder(p)) {
            if (auto w = s_.writer_of(s_.connections[*c].from)) {
                return of(*w);
            }
        }
        return std::nullopt;
    }

private:
    const ResolvedSystem& s_;
    std::vector<TaskHandle> tasks_;
    std::vector<std::size_t> offsets_;
};

std::optional<Hertz> fixed_rate(const ResolvedSystem& s, TaskHandle t) {
    const auto& def = s.task_def(t);
    if (def.constraint) {
        return def.constraint->fixed_frequency();
    }
    return std::nullopt;
}

bool is_and(const ResolvedSystem& s, TaskHandle t, const ResolvedDataTrigger& dt) {
    return dt.port.kind == TriggerPort::Kind::Compound &&
           s.component_of(t.instance).compounds[dt.port.index].combination == Combination::And;
}

Duration blocking_of(const ResolvedSystem& s, TaskHandle t) {
    const auto& comp = s.component_of(t.instance);
    if (comp.tasks[t.task].kind != TaskKind::Cooperative) {
        return Duration{0};
    }
    Duration sum{0};
    for (std::size_t i = 0; i < comp.tasks.size(); ++i) {
        if (i != t.task && comp.tasks[i].kind == TaskKind::Cooperative) {
            sum += s.instances[t.instance].tasks[i].exec.wcet;
        }
    }
    return sum;
}

}  // namespace

// ---------------------------------------------------------------------------
// Frequencies
// ---------------------------------------------------------------------------

std::vector<TaskFrequency> propagate_frequencies(const ResolvedSystem& s) {
    const TaskIndex index(s);
    std::vector<std::optional<TaskFrequency>> result(index.size());

    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto t = index.at(i);
        const auto& src = s.task_config(t).source;
        if (const auto* pt = std::get_if<PeriodicTimer>(&src)) {
            result[i] = TaskFrequency{t, pt->frequency, {}};
        } else if (std::holds_alternative<Sporadic>(src)) {
            if (auto f = fixed_rate(s, t)) {
                result[i] = TaskFrequency{t, *f, {}};
            } else {
                result[i] = TaskFrequency{t, std::nullopt, UnknownReason::SporadicUnbounded};
            }
        }
    }

    // Data-triggered tasks resolve once all their producers have. Whatever
    // is still pending at the fixed point sits on or behind a trigger cycle.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (result[i]) {
                continue;
            }
            const auto t = index.at(i);
            const auto& dt = std::get<ResolvedDataTrigger>(s.task_config(t).source);
            const auto members = s.trigger_members(t.instance, dt.port);

            bool ready = true;
            std::vector<std::optional<std::size_t>> producers;
            for (auto m : members) {
                auto p = index.producer({t.instance, m});
                if (p && !result[*p]) {
                    ready = false;
                    break;
                }
                producers.push_back(p);
            }
            if (!ready) {
                continue;
            }

            const bool conjunctive = dt.port.kind == TriggerPort::Kind::Plain || is_and(s, t, dt);
            std::optional<UnknownReason> unknown;
            std::vector<double> rates;
            for (const auto& p : producers) {
                if (!p) {
                    if (conjunctive) {
                        unknown = unknown.value_or(UnknownReason::NoInput);
                    }
                    continue;
                }
                if (!result[*p]->known()) {
                    unknown = unknown.value_or(result[*p]->reason);
                    continue;
                }
                rates.push_back(result[*p]->value->value);
            }
            if (!unknown && rates.empty()) {
                unknown = UnknownReason::NoInput;
            }

            TaskFrequency tf{t, std::nullopt, UnknownReason::NoInput};
            if (unknown) {
                tf.reason = *unknown;
            } else {
                const double combined = conjunctive ? *std::min_element(rates.begin(), rates.end())
                                                    : std::accumulate(rates.begin(), rates.end(), 0.0);
                tf.value = Hertz{combined / dt.prescaler};
            }
            result[i] = tf;
            changed = true;
        }
    }

    std::vector<TaskFrequency> out;
    out.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        out.push_back(result[i].value_or(TaskFrequency{index.at(i), std::nullopt, UnknownReason::UnresolvedCycle}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

std::vector<SamplingClass> classify_sampling(const ResolvedSystem& s, std::span<const TaskFrequency> freqs) {
    const TaskIndex index(s);
    std::vector<SamplingClass> out;

    for (std::size_t ci = 0; ci < s.connections.size(); ++ci) {
        const auto& conn = s.connections[ci];
        const auto writer = s.writer_of(conn.from);
        const auto& comp = s.component_of(conn.to.instance);

        for (std::size_t ti = 0; ti < comp.tasks.size(); ++ti) {
            const TaskHandle consumer{conn.to.instance, ti};
            const auto read = s.plain_ports_read(consumer);
            if (std::find(read.begin(), read.end(), conn.to.port) == read.end()) {
                continue;
            }
            SamplingClass sc;
            sc.connection = ci;
            sc.producer = conn.from;
            sc.consumer = consumer;

            const auto& src = s.task_config(consumer).source;
            const auto* dt = std::get_if<ResolvedDataTrigger>(&src);
            bool triggered = false;
            if (dt != nullptr) {
                const auto members = s.trigger_members(consumer.instance, dt->port);
                triggered = std::find(members.begin(), members.end(), conn.to.port) != members.end();
            }

            if (triggered) {
                sc.mode = LinkMode::DataTriggered;
                sc.kind = dt->prescaler > 1 ? SamplingKind::Undersampling : SamplingKind::Synchronous;
                sc.ratio = static_cast<double>(dt->prescaler);
            } else {
                sc.mode = LinkMode::Register;
                const auto& fc = freqs[index.of(consumer)];
                const bool producer_known = writer && freqs[index.of(*writer)].known();
                if (!fc.known() || !producer_known) {
                    sc.kind = SamplingKind::Unknown;
                    sc.ratio = 0.0;
                } else {
                    const double c = fc.value->value;
                    const double p = freqs[index.of(*writer)].value->value;
                    if (c > p) {
                        sc.kind = SamplingKind::Oversampling;
                        sc.ratio = c / p;
                    } else if (c < p) {
                        sc.kind = SamplingKind::Undersampling;
                        sc.ratio = p / c;
                    } else {
                        sc.kind = SamplingKind::Synchronous;
                        sc.ratio = 1.0;
                    }
                }
            }
            out.push_back(sc);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Activation patterns
// ---------------------------------------------------------------------------

std::vector<TaskTiming> derive_timing(const ResolvedSystem& s) {
    const TaskIndex index(s);
    std::vector<std::optional<TaskTiming>> result(index.size());

    auto finish = [&](std::size_t i, std::optional<ActivationPattern> act, BlockingReason reason) {
        const auto t = index.at(i);
        const auto& exec = s.task_config(t).exec;
        TaskTiming tt{t, act, std::nullopt, blocking_of(s, t), false, reason};
        if (act) {
            const Duration busy = tt.blocking + exec.wcet;
            tt.loss_free = busy < act->span_lower(1);
            if (tt.loss_free) {
                tt.publications =
                    ActivationPattern{act->min_gap, act->max_gap, act->jitter + tt.blocking + exec.wcet - exec.bcet};
            } else {
                tt.reason = BlockingReason::ActivationLoss;
            }
        }
        result[i] = tt;
    };

    for (std::size_t i = 0; i < index.size(); ++i) {
        const auto t = index.at(i);
        const auto& src = s.task_config(t).source;
        if (const auto* pt = std::get_if<PeriodicTimer>(&src)) {
            const Duration T = period_of(pt->frequency);
            finish(i, ActivationPattern{T, T, Duration{0}}, BlockingReason::UnknownTiming);
        } else if (const auto* sp = std::get_if<Sporadic>(&src)) {
            if (auto f = fixed_rate(s, t)) {
                const Duration T = period_of(*f);
                finish(i, ActivationPattern{T, T, Duration{0}}, BlockingReason::UnknownTiming);
            } else if (sp->min_interarrival && sp->max_interarrival) {
                finish(i, ActivationPattern{*sp->min_interarrival, *sp->max_interarrival, Duration{0}},
                       BlockingReason::UnknownTiming);
            } else {
                finish(i, std::nullopt, BlockingReason::SporadicUnbounded);
            }
        }
    }

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < index.size(); ++i) {
            if (result[i]) {
                continue;
            }
            const auto t = index.at(i);
            const auto& dt = std::get<ResolvedDataTrigger>(s.task_config(t).source);
            const auto members = s.trigger_members(t.instance, dt.port);

            bool ready = true;
            std::vector<std::optional<std::size_t>> producers;
            for (auto m : members) {
                auto p = index.producer({t.instance, m});
                if (p && !result[*p]) {
                    ready = false;
                    break;
                }
                producers.push_back(p);
            }
            if (!ready) {
                continue;
            }
            changed = true;

            const bool plain = dt.port.kind == TriggerPort::Kind::Plain;
            const bool conjunctive = plain || is_and(s, t, dt);
            std::optional<BlockingReason> blocked;
            std::vector<ActivationPattern> inputs;
            for (const auto& p : producers) {
                if (!p) {
                    if (conjunctive) {
                        blocked = blocked.value_or(BlockingReason::UnknownTiming);
                    }
                    continue;
                }
                if (!result[*p]->publications) {
                    blocked = blocked.value_or(result[*p]->reason);
                    continue;
                }
                inputs.push_back(*result[*p]->publications);
            }
            if (blocked || inputs.empty()) {
                finish(i, std::nullopt, blocked.value_or(BlockingReason::UnknownTiming));
                continue;
            }

            const std::int64_t k = dt.prescaler;
            if (plain) {
                const auto& in = inputs.front();
                finish(i, ActivationPattern{k * in.min_gap, k * in.max_gap, in.jitter}, BlockingReason::UnknownTiming);
            } else if (conjunctive) {
                Duration lo = Duration::max();
                Duration hi{0};
                for (const auto& in : inputs) {
                    lo = std::min(lo, in.span_lower(1));
                    hi = std::max(hi, in.span_upper(1));
                }
                finish(i, ActivationPattern{k * lo, k * hi, Duration{0}}, BlockingReason::UnknownTiming);
            } else {
                Duration hi = Duration::max();
                for (const auto& in : inputs) {
                    hi = std::min(hi, in.span_upper(1));
                }
                finish(i, ActivationPattern{Duration{0}, k * hi, Duration{0}}, BlockingReason::UnknownTiming);
            }
        }
    }

    std::vector<TaskTiming> out;
    out.reserve(index.size());
    for (std::size_t i = 0; i < index.size(); ++i) {
        out.push_back(result[i].value_or(
            TaskTiming{index.at(i), std::nullopt, std::nullopt, blocking_of(s, index.at(i)), false,
                       BlockingReason::UnknownTiming}));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

namespace {

HopLatency hop_latency(const ResolvedSystem& s, const TaskIndex& index, std::span<const TaskTiming> timing,
                       std::size_t conn_index, std::size_t producer, TaskHandle consumer) {
    const auto& conn = s.connections[conn_index];
    const auto& cfg = s.task_config(consumer);
    const auto& ct = timing[index.of(consumer)];

    HopLatency hop;
    hop.connection = conn_index;
    hop.consumer = consumer;
    hop.best = conn.delay + cfg.exec.bcet;

    auto blocked = [&](BlockingReason r) {
        hop.reason = r;
        return hop;
    };

    if (!ct.activations) {
        return blocked(ct.reason);
    }
    if (!ct.loss_free) {
        return blocked(BlockingReason::ActivationLoss);
    }

    Duration wait{0};
    const auto* dt = std::get_if<ResolvedDataTrigger>(&cfg.source);
    std::vector<std::size_t> members;
    if (dt != nullptr) {
        members = s.trigger_members(consumer.instance, dt->port);
    }
    const bool triggered = std::find(members.begin(), members.end(), conn.to.port) != members.end();

    if (triggered) {
        hop.mode = LinkMode::DataTriggered;
        const std::int64_t k = dt->prescaler;
        if (dt->port.kind == TriggerPort::Kind::Compound && is_and(s, consumer, *dt)) {
            // wait for the other members to deliver, then k-1 further joins
            Duration others{0};
            Duration any{0};
            for (auto m : members) {
                auto p = index.producer({consumer.instance, m});
                if (!p || !timing[*p].publications) {
                    return blocked(p ? timing[*p].reason : BlockingReason::UnknownTiming);
                }
                const Duration gap = timing[*p].publications->span_upper(1);
                any = std::max(any, gap);
                if (m != conn.to.port) {
                    others = std::max(others, gap);
                }
            }
            wait = others + (k - 1) * any;
        } else if (k > 1) {
            const auto& pt = timing[producer];
            if (!pt.publications) {
                return blocked(pt.reason);
            }
            wait = pt.publications->span_upper(k - 1);
        }
    } else {
        hop.mode = LinkMode::Register;
        wait = ct.activations->span_upper(1);
    }

    hop.worst = conn.delay + wait + ct.blocking + cfg.exec.wcet;
    return hop;
}

}  // namespace

ChainAnalysis chain_latency(const ResolvedSystem& s, std::size_t chain_index, std::span<const TaskTiming> timing) {
    const TaskIndex index(s);
    const auto& chain = s.chains[chain_index];

    ChainAnalysis result;
    result.chain = chain_index;
    LatencyInterval total;
    total.worst = Duration{0};

    for (std::size_t i = 0; i + 1 < chain.stages.size(); ++i) {
        const auto from = chain.stages[i];
        const auto to = chain.stages[i + 1];
        const auto producer = s.writer_of(from);
        const auto consumer = s.writer_of(to);

        std::optional<HopLatency> chosen;
        if (producer && consumer) {
            const auto read = s.plain_ports_read(*consumer);
            for (std::size_t ci = 0; ci < s.connections.size(); ++ci) {
                const auto& conn = s.connections[ci];
                if (conn.from != from || conn.to.instance != to.instance ||
                    std::find(read.begin(), read.end(), conn.to.port) == read.end()) {
                    continue;
                }
                auto hop = hop_latency(s, index, timing, ci, index.of(*producer), *consumer);
                if (!chosen) {
                    chosen = hop;
                    continue;
                }
                // the first path to react wins, so both bounds take the minimum
                chosen->best = std::min(chosen->best, hop.best);
                if (hop.worst && (!chosen->worst || *hop.worst < *chosen->worst)) {
                    chosen->worst = hop.worst;
                    chosen->reason.reset();
                    chosen->connection = hop.connection;
                    chosen->mode = hop.mode;
                }
            }
        }
        if (!chosen) {
            HopLatency missing;
            missing.consumer = consumer.value_or(TaskHandle{});
            missing.reason = BlockingReason::Unreachable;
            chosen = missing;
        }

        total.best += chosen->best;
        if (chosen->worst && total.worst) {
            *total.worst += *chosen->worst;
        } else {
            total.worst.reset();
            if (!total.reason) {
                total.reason = chosen->reason.value_or(BlockingReason::UnknownTiming);
            }
        }
        result.hops.push_back(*chosen);
    }

    result.latency = total;
    result.verdict = chain.spec ? check_spec(total, *chain.spec) : Verdict::NoSpec;
    return result;
}

Verdict check_spec(const LatencyInterval& interval, const E2ELatencySpec& spec) {
    if (!interval.bounded()) {
        return Verdict::Inconclusive;
    }
    if (spec.min_latency <= interval.best && *interval.worst <= spec.max_latency) {
        return Verdict::MeetsSpec;
    }
    return Verdict::ViolatesSpec;
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

bool AnalysisReport::any_violation() const {
    return std::any_of(chains.begin(), chains.end(),
                       [](const ChainAnalysis& c) { return c.verdict == Verdict::ViolatesSpec; });
}

AnalysisReport analyze(const ResolvedSystem& s, std::span<const std::size_t> selected) {
    AnalysisReport report;
    report.frequencies = propagate_frequencies(s);
    report.sampling = classify_sampling(s, report.frequencies);
    report.timing = derive_timing(s);

    report.chains.resize(selected.size());
    const auto n = static_cast<std::int64_t>(selected.size());
#pragma omp parallel for schedule(dynamic) if (n > 4)
    for (std::int64_t i = 0; i < n; ++i) {
        report.chains[static_cast<std::size_t>(i)] = chain_latency(s, selected[static_cast<std::size_t>(i)], report.timing);
    }

    for (const auto& sc : report.sampling) {
        if (sc.mode != LinkMode::Register) {
            continue;
        }
        const auto& conn = s.connections[sc.connection];
        const std::string link = s.port_name(conn.from) + " -> " + s.task_name(sc.consumer);
        switch (sc.kind) {
            case SamplingKind::Synchronous:
                report.diagnostics.push_back(make_warning(
                    "W403", link + ": equal rates but unsynchronized phases (register read)", conn.span));
                break;
            case SamplingKind::Oversampling:
                report.diagnostics.push_back(
                    make_warning("W404", link + ": oversampling by " + format_number(sc.ratio), conn.span));
                break;
            case SamplingKind::Undersampling:
                report.diagnostics.push_back(
                    make_warning("W405", link + ": undersampling by " + format_number(sc.ratio), conn.span));
                break;
            case SamplingKind::Unknown:
                break;
        }
    }
    for (const auto& ca : report.chains) {
        if (!ca.latency.bounded()) {
            const auto& chain = s.chains[ca.chain];
            report.diagnostics.push_back(make_warning(
                "W406",
                "chain '" + chain.name + "' has no latency bound (" + to_string(*ca.latency.reason) + ")",
                chain.span));
        }
    }
    return report;
}

AnalysisReport analyze(const ResolvedSystem& s) {
    std::vector<std::size_t> all(s.chains.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return analyze(s, all);
}

const char* to_string(UnknownReason r) {
    switch (r) {
        case UnknownReason::SporadicUnbounded:
            return "SPORADIC_UNBOUNDED";
        case UnknownReason::UnresolvedCycle:
            return "UNRESOLVED_CYCLE";
        case UnknownReason::NoInput:
            return "NO_INPUT";
    }
    return "?";
}

const char* to_string(SamplingKind k) {
    switch (k) {
        case SamplingKind::Synchronous:
            return "SYNCHRONOUS";
        case SamplingKind::Oversampling:
            return "OVERSAMPLING";
        case SamplingKind::Undersampling:
            return "UNDERSAMPLING";
        case SamplingKind::Unknown:
            return "UNKNOWN";
    }
    return "?";
}

const char* to_string(LinkMode m) { return m == LinkMode::DataTriggered ? "data-triggered" : "register"; }

const char* to_string(BlockingReason r) {
    switch (r) {
        case BlockingReason::SporadicUnbounded:
            return "SPORADIC";
        case BlockingReason::UnknownTiming:
            return "UNKNOWN_TIMING";
        case BlockingReason::ActivationLoss:
            return "ACTIVATION_LOSS";
        case BlockingReason::Unreachable:
            return "UNREACHABLE";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::MeetsSpec:
            return "MEETS_SPEC";
        case Verdict::ViolatesSpec:
            return "VIOLATES_SPEC";
        case Verdict::NoSpec:
            return "NO_SPEC";
        case Verdict::Inconclusive:
            return "INCONCLUSIVE";
    }
    return "?";
}

}  // namespace cechain
