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

#include "cechain/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <tuple>

#include <nlohmann/json.hpp>

namespace cechain::sim {

namespace {

enum class QueuedKind : int { Complete = 0, Deliver = 1, Timer = 2 };

struct Queued {
    Duration time;
    int instance_rank;
    int task_rank;
    QueuedKind kind;
    std::uint64_t seq;
    std::size_t target;   // flat task index, or connection index for Deliver
    std::int64_t sample;  // Deliver only

    [[nodiscard]] auto key() const {
        return std::tuple(time, instance_rank, task_rank, static_cast<int>(kind), seq);
    }
    friend bool operator>(const Queued& a, const Queued& b) { return a.key() > b.key(); }
};

enum class TaskState { Idle, Pending, Running };

struct TaskRuntime {
    TaskHandle handle;
    TaskState state = TaskState::Idle;
    std::int64_t run = 0;
    std::int64_t trigger_count = 0;  // samples (plain/OR) or joins (AND)
    std::vector<bool> fresh;         // AND members
    std::vector<std::size_t> members;
    int prescaler = 1;
    bool data_triggered = false;
    bool conjunctive = false;
    bool cooperative = false;
    std::optional<Duration> period;                      // timer or fixed sporadic
    std::optional<std::pair<Duration, Duration>> gaps;  // bounded sporadic
    std::vector<std::size_t> reads;                      // plain in-ports
    std::vector<std::size_t> writes;                     // out-ports
    ExecTime exec;
};

struct Register {
    std::int64_t sample = 0;
    bool read = false;
};

class Engine {
public:
    Engine(const ResolvedSystem& s, const SimConfig& cfg) : s_(s), cfg_(cfg), rng_(cfg.seed) {
        if (cfg.duration <= Duration{0}) {
            throw SimulationUnsupported("simulation duration must be positive");
        }
        build();
    }

    std::vector<SimEvent> run() {
        while (!queue_.empty()) {
            const Queued q = queue_.top();
            queue_.pop();
            if (q.time >= cfg_.duration) {
                break;
            }
            now_ = q.time;
            switch (q.kind) {
                case QueuedKind::Complete:
                    complete(q.target);
                    break;
                case QueuedKind::Deliver:
                    deliver(q.target, q.sample);
                    break;
                case QueuedKind::Timer:
                    timer(q.target);
                    break;
            }
        }
        return std::move(events_);
    }

private:
    void build() {
        // names define the tiebreak for simultaneous events
        std::vector<std::size_t> order(s_.instances.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return s_.instances[a].name < s_.instances[b].name; });
        instance_rank_.resize(order.size());
        for (std::size_t r = 0; r < order.size(); ++r) {
            instance_rank_[order[r]] = static_cast<int>(r);
        }

        for (std::size_t i = 0; i < s_.instances.size(); ++i) {
            const auto& comp = s_.component_of(i);
            offsets_.push_back(tasks_.size());
            std::vector<std::size_t> by_name(comp.tasks.size());
            std::iota(by_name.begin(), by_name.end(), std::size_t{0});
            std::sort(by_name.begin(), by_name.end(),
                      [&](std::size_t a, std::size_t b) { return comp.tasks[a].name < comp.tasks[b].name; });
            std::vector<int> rank(comp.tasks.size());
            for (std::size_t r = 0; r < by_name.size(); ++r) {
                rank[by_name[r]] = static_cast<int>(r);
            }
            for (std::size_t t = 0; t < comp.tasks.size(); ++t) {
                task_rank_.push_back(rank[t]);
                tasks_.push_back(make_runtime({i, t}));
            }
            out_counter_.emplace_back(comp.out_ports.size(), 0);
            registers_.emplace_back(comp.in_ports.size());
            coop_queue_.emplace_back();
            coop_busy_.push_back(false);
        }
        for (std::size_t ci = 0; ci < s_.connections.size(); ++ci) {
            outgoing_[s_.connections[ci].from].push_back(ci);
        }

        for (std::size_t i = 0; i < tasks_.size(); ++i) {
            const auto& rt = tasks_[i];
            if (rt.period) {
                const Duration phase =
                    cfg_.phase == PhasePolicy::Random ? draw(Duration{0}, *rt.period - Duration{1}) : Duration{0};
                schedule(phase, QueuedKind::Timer, i);
            } else if (rt.gaps) {
                const Duration phase = cfg_.phase == PhasePolicy::Random
                                           ? draw(Duration{0}, rt.gaps->second - Duration{1})
                                           : Duration{0};
                schedule(phase, QueuedKind::Timer, i);
            }
        }
    }

    TaskRuntime make_runtime(TaskHandle h) {
        const auto& def = s_.task_def(h);
        const auto& cfg = s_.task_config(h);
        TaskRuntime rt;
        rt.handle = h;
        rt.cooperative = def.kind == TaskKind::Cooperative;
        rt.exec = cfg.exec;
        rt.reads = s_.plain_ports_read(h);
        const auto& comp = s_.component_of(h.instance);
        for (std::size_t p = 0; p < comp.out_ports.size(); ++p) {
            if (def.writes_port(comp.out_ports[p].name)) {
                rt.writes.push_back(p);
            }
        }

        if (const auto* dt = std::get_if<ResolvedDataTrigger>(&cfg.source)) {
            rt.data_triggered = true;
            rt.prescaler = dt->prescaler;
            rt.members = s_.trigger_members(h.instance, dt->port);
            rt.conjunctive = dt->port.kind == TriggerPort::Kind::Compound &&
                             comp.compounds[dt->port.index].combination == Combination::And;
            rt.fresh.assign(rt.members.size(), false);
        } else if (const auto* pt = std::get_if<PeriodicTimer>(&cfg.source)) {
            rt.period = period_of(pt->frequency);
        } else {
            const auto& sp = std::get<Sporadic>(cfg.source);
            const auto fixed = def.constraint ? def.constraint->fixed_frequency() : std::nullopt;
            if (fixed) {
                rt.period = period_of(*fixed);
            } else if (sp.min_interarrival && sp.max_interarrival) {
                rt.gaps = std::pair{*sp.min_interarrival, *sp.max_interarrival};
            } else {
                throw SimulationUnsupported("sporadic task " + s_.task_name(h) +
                                            " has neither interarrival bounds nor a fixed activation rate");
            }
        }
        return rt;
    }

    Duration draw(Duration lo, Duration hi) {
        if (hi <= lo) {
            return lo;
        }
        const auto span = static_cast<std::uint64_t>((hi - lo).count()) + 1;
        return lo + Duration{static_cast<std::int64_t>(rng_() % span)};
    }

    void schedule(Duration at, QueuedKind kind, std::size_t target, std::int64_t sample = 0) {
        int inst_rank = 0;
        int task_rank = 0;
        if (kind == QueuedKind::Deliver) {
            inst_rank = instance_rank_[s_.connections[target].to.instance];
            task_rank = -1;
        } else {
            inst_rank = instance_rank_[tasks_[target].handle.instance];
            task_rank = task_rank_[target];
        }
        queue_.push(Queued{at, inst_rank, task_rank, kind, seq_++, target, sample});
    }

    void emit(EventKind kind, std::size_t instance, std::optional<std::size_t> task, std::optional<std::size_t> port,
              std::int64_t sample, std::int64_t run) {
        events_.push_back(SimEvent{now_, kind, instance, task, port, sample, run});
    }

    void timer(std::size_t ti) {
        auto& rt = tasks_[ti];
        const Duration next = now_ + (rt.period ? *rt.period : draw(rt.gaps->first, rt.gaps->second));
        if (next < cfg_.duration) {
            schedule(next, QueuedKind::Timer, ti);
        }
        if (rt.state != TaskState::Idle) {
            emit(EventKind::SampleSkipped, rt.handle.instance, rt.handle.task, std::nullopt, 0, 0);
            return;
        }
        activate(ti);
    }

    void activate(std::size_t ti) {
        auto& rt = tasks_[ti];
        ++rt.run;
        emit(EventKind::TaskActivated, rt.handle.instance, rt.handle.task, std::nullopt, 0, rt.run);
        if (rt.cooperative && coop_busy_[rt.handle.instance]) {
            rt.state = TaskState::Pending;
            coop_queue_[rt.handle.instance].push_back(ti);
            return;
        }
        start(ti);
    }

    void start(std::size_t ti) {
        auto& rt = tasks_[ti];
        rt.state = TaskState::Running;
        if (rt.cooperative) {
            coop_busy_[rt.handle.instance] = true;
        }
        auto& regs = registers_[rt.handle.instance];
        for (auto p : rt.reads) {
            if (regs[p].sample != 0) {
                regs[p].read = true;
                emit(EventKind::SampleRead, rt.handle.instance, rt.handle.task, p, regs[p].sample, rt.run);
            }
        }
        Duration exec{0};
        switch (cfg_.exec) {
            case ExecPolicy::Bcet:
                exec = rt.exec.bcet;
                break;
            case ExecPolicy::Wcet:
                exec = rt.exec.wcet;
                break;
            case ExecPolicy::Uniform:
                exec = draw(rt.exec.bcet, rt.exec.wcet);
                break;
        }
        schedule(now_ + exec, QueuedKind::Complete, ti);
    }

    void complete(std::size_t ti) {
        auto& rt = tasks_[ti];
        const auto inst = rt.handle.instance;
        emit(EventKind::TaskCompleted, inst, rt.handle.task, std::nullopt, 0, rt.run);
        rt.state = TaskState::Idle;
        if (rt.cooperative) {
            coop_busy_[inst] = false;
        }
        for (auto p : rt.writes) {
            const std::int64_t id = ++out_counter_[inst][p];
            emit(EventKind::SamplePublished, inst, rt.handle.task, p, id, rt.run);
            auto it = outgoing_.find(OutPortHandle{inst, p});
            if (it == outgoing_.end()) {
                continue;
            }
            for (auto ci : it->second) {
                const auto delay = s_.connections[ci].delay;
                if (delay == Duration{0}) {
                    deliver(ci, id);
                } else {
                    schedule(now_ + delay, QueuedKind::Deliver, ci, id);
                }
            }
        }
        if (rt.cooperative && !coop_busy_[inst] && !coop_queue_[inst].empty()) {
            const auto next = coop_queue_[inst].front();
            coop_queue_[inst].pop_front();
            start(next);
        }
    }

    void deliver(std::size_t ci, std::int64_t sample) {
        const auto to = s_.connections[ci].to;
        auto& reg = registers_[to.instance][to.port];
        if (reg.sample != 0 && !reg.read) {
            emit(EventKind::SampleSkipped, to.instance, std::nullopt, to.port, reg.sample, 0);
        }
        reg = Register{sample, false};

        const auto first = offsets_[to.instance];
        const auto count = s_.instances[to.instance].tasks.size();
        for (std::size_t ti = first; ti < first + count; ++ti) {
            auto& rt = tasks_[ti];
            if (!rt.data_triggered) {
                continue;
            }
            const auto pos = std::find(rt.members.begin(), rt.members.end(), to.port);
            if (pos == rt.members.end()) {
                continue;
            }
            if (rt.conjunctive) {
                rt.fresh[static_cast<std::size_t>(pos - rt.members.begin())] = true;
                if (!std::all_of(rt.fresh.begin(), rt.fresh.end(), [](bool f) { return f; })) {
                    continue;
                }
                std::fill(rt.fresh.begin(), rt.fresh.end(), false);
            }
            if (++rt.trigger_count % rt.prescaler != 0) {
                continue;
            }
            if (rt.state != TaskState::Idle) {
                emit(EventKind::SampleSkipped, rt.handle.instance, rt.handle.task, to.port, sample, 0);
                continue;
            }
            activate(ti);
        }
    }

    const ResolvedSystem& s_;
    SimConfig cfg_;
    std::mt19937_64 rng_;
    Duration now_{0};
    std::uint64_t seq_ = 0;
    std::priority_queue<Queued, std::vector<Queued>, std::greater<>> queue_;
    std::vector<TaskRuntime> tasks_;
    std::vector<std::size_t> offsets_;
    std::vector<int> instance_rank_;
    std::vector<int> task_rank_;
    std::vector<std::vector<std::int64_t>> out_counter_;
    std::vector<std::vector<Register>> registers_;
    std::vector<std::deque<std::size_t>> coop_queue_;
    std::vector<bool> coop_busy_;
    std::map<OutPortHandle, std::vector<std::size_t>> outgoing_;
    std::vector<SimEvent> events_;
};

}  // namespace

std::vector<SimEvent> simulate(const ResolvedSystem& system, const SimConfig& cfg) {
    return Engine(system, cfg).run();
}

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

std::vector<ChainLatencySample> measure_chain(const ResolvedSystem& s, const std::vector<SimEvent>& events,
                                              std::size_t chain_index) {
    const auto& chain = s.chains[chain_index];
    std::vector<ChainLatencySample> out;
    if (chain.stages.size() < 2) {
        return out;
    }

    // head id reflected by each publication of the current stage
    std::map<std::int64_t, std::int64_t> head_of;
    const auto head = chain.stages.front();
    for (const auto& e : events) {
        if (e.kind == EventKind::SamplePublished && e.instance == head.instance && e.port == head.port) {
            head_of[e.sample] = e.sample;
            out.push_back(ChainLatencySample{chain_index, e.sample, e.time, std::nullopt, false, false});
        }
    }

    Duration warmup_end{0};
    struct Publication {
        Duration time;
        std::int64_t head;
    };
    std::vector<Publication> final_pubs;

    for (std::size_t i = 0; i + 1 < chain.stages.size(); ++i) {
        const auto from = chain.stages[i];
        const auto to = chain.stages[i + 1];
        const auto consumer = s.writer_of(to);
        if (!consumer) {
            return out;
        }
        std::vector<std::size_t> hop_ports;
        for (const auto& c : s.connections) {
            if (c.from == from && c.to.instance == to.instance) {
                hop_ports.push_back(c.to.port);
            }
        }
        const auto read = s.plain_ports_read(*consumer);

        std::optional<Duration> first_activation;
        std::map<std::int64_t, std::int64_t> run_head;  // run -> head id read
        std::map<std::int64_t, std::int64_t> next_head_of;
        for (const auto& e : events) {
            if (e.instance != consumer->instance || e.task != consumer->task) {
                continue;
            }
            if (e.kind == EventKind::TaskActivated && !first_activation) {
                first_activation = e.time;
            } else if (e.kind == EventKind::SampleRead &&
                       std::find(hop_ports.begin(), hop_ports.end(), *e.port) != hop_ports.end() &&
                       std::find(read.begin(), read.end(), *e.port) != read.end()) {
                auto h = head_of.find(e.sample);
                if (h != head_of.end()) {
                    auto& slot = run_head[e.run];
                    slot = std::max(slot, h->second);
                }
            } else if (e.kind == EventKind::SamplePublished && e.port == to.port) {
                auto r = run_head.find(e.run);
                if (r != run_head.end()) {
                    next_head_of[e.sample] = r->second;
                    if (i + 2 == chain.stages.size()) {
                        final_pubs.push_back({e.time, r->second});
                    }
                }
            }
        }
        warmup_end = std::max(warmup_end, first_activation.value_or(Duration::max()));
        head_of = std::move(next_head_of);
    }

    // final_pubs is in time order; the first one reflecting >= s is found on
    // the running maximum of reflected head ids
    std::vector<std::int64_t> running_max;
    std::int64_t best = 0;
    std::map<std::int64_t, bool> reflected_exactly;
    for (const auto& p : final_pubs) {
        best = std::max(best, p.head);
        running_max.push_back(best);
        reflected_exactly[p.head] = true;
    }
    for (auto& sample : out) {
        sample.warmup = sample.published < warmup_end;
        const auto it = std::lower_bound(running_max.begin(), running_max.end(), sample.source_sample);
        if (it == running_max.end()) {
            continue;
        }
        const auto& pub = final_pubs[static_cast<std::size_t>(it - running_max.begin())];
        sample.latency = pub.time - sample.published;
        sample.dropped = reflected_exactly.count(sample.source_sample) == 0;
    }
    return out;
}

LatencyStats summarize(const std::vector<ChainLatencySample>& samples) {
    LatencyStats stats;
    std::vector<Duration> values;
    for (const auto& s : samples) {
        if (s.warmup || !s.latency) {
            continue;
        }
        values.push_back(*s.latency);
        stats.dropped += s.dropped ? 1 : 0;
    }
    stats.count = values.size();
    if (values.empty()) {
        return stats;
    }
    std::sort(values.begin(), values.end());
    stats.min = values.front();
    stats.max = values.back();
    double sum = 0.0;
    for (auto v : values) {
        sum += to_millis(v);
    }
    stats.mean_ms = sum / static_cast<double>(values.size());
    // nearest-rank percentile
    const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(values.size())));
    stats.p99 = values[std::max<std::size_t>(rank, 1) - 1];
    return stats;
}

ComparisonVerdict compare(const LatencyInterval& analysis, const std::vector<ChainLatencySample>& samples) {
    ComparisonVerdict v;
    v.analytic = analysis;
    const auto stats = summarize(samples);
    v.count = stats.count;
    v.observed_min = stats.min;
    v.observed_max = stats.max;
    v.observed_mean_ms = stats.mean_ms;
    v.observed_p99 = stats.p99;
    if (!analysis.bounded() || stats.count == 0) {
        v.verdict = Containment::Inconclusive;
    } else if (stats.min >= analysis.best && stats.max <= *analysis.worst) {
        v.verdict = Containment::Contained;
    } else {
        v.verdict = Containment::Violation;
    }
    return v;
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::TaskActivated:
            return "TASK_ACTIVATED";
        case EventKind::TaskCompleted:
            return "TASK_COMPLETED";
        case EventKind::SamplePublished:
            return "SAMPLE_PUBLISHED";
        case EventKind::SampleRead:
            return "SAMPLE_READ";
        case EventKind::SampleSkipped:
            return "SAMPLE_SKIPPED";
    }
    return "?";
}

const char* to_string(Containment c) {
    switch (c) {
        case Containment::Contained:
            return "CONTAINED";
        case Containment::Violation:
            return "VIOLATION";
        case Containment::Inconclusive:
            return "INCONCLUSIVE";
    }
    return "?";
}

void write_trace_jsonl(std::ostream& out, const ResolvedSystem& s, const SimConfig& cfg,
                       const std::vector<SimEvent>& events) {
    nlohmann::ordered_json header;
    header["traceVersion"] = 1;
    header["system"] = s.name;
    header["durationNs"] = cfg.duration.count();
    header["seed"] = cfg.seed;
    header["phasePolicy"] = cfg.phase == PhasePolicy::Zero ? "ZERO" : "RANDOM";
    header["execPolicy"] = cfg.exec == ExecPolicy::Bcet ? "BCET" : cfg.exec == ExecPolicy::Wcet ? "WCET" : "UNIFORM";
    out << header.dump() << '\n';

    for (const auto& e : events) {
        nlohmann::ordered_json j;
        j["t"] = e.time.count();
        j["kind"] = to_string(e.kind);
        j["instance"] = s.instances[e.instance].name;
        j["task"] = e.task ? nlohmann::ordered_json(s.component_of(e.instance).tasks[*e.task].name) : nlohmann::ordered_json(nullptr);
        if (e.port) {
            const auto& comp = s.component_of(e.instance);
            j["port"] = e.kind == EventKind::SamplePublished ? comp.out_ports[*e.port].name : comp.in_ports[*e.port].name;
        } else {
            j["port"] = nullptr;
        }
        j["sample"] = e.sample;
        j["run"] = e.run;
        out << j.dump() << '\n';
    }
}

}  // namespace cechain::sim
