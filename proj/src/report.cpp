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

#include "cechain/report.hpp"

#include <fmt/format.h>

namespace cechain {

namespace {

using nlohmann::ordered_json;

ordered_json nullable_ns(const std::optional<Duration>& d) {
    return d ? ordered_json(d->count()) : ordered_json(nullptr);
}

ordered_json nullable_ms(const std::optional<Duration>& d) {
    return d ? ordered_json(to_millis(*d)) : ordered_json(nullptr);
}

std::string ms(Duration d) { return format_duration(d, TimeUnit::Millis) + " ms"; }

std::string source_text(const ResolvedSystem& s, TaskHandle t) {
    const auto& src = s.task_config(t).source;
    if (const auto* dt = std::get_if<ResolvedDataTrigger>(&src)) {
        const auto& comp = s.component_of(t.instance);
        const auto& port = dt->port.kind == TriggerPort::Kind::Plain ? comp.in_ports[dt->port.index].name
                                                                      : comp.compounds[dt->port.index].name;
        return dt->prescaler == 1 ? "datatriggered " + port : fmt::format("datatriggered {} / {}", port, dt->prescaler);
    }
    if (const auto* pt = std::get_if<PeriodicTimer>(&src)) {
        return "periodic " + format_number(pt->frequency.value) + " Hz";
    }
    const auto& sp = std::get<Sporadic>(src);
    if (sp.min_interarrival && sp.max_interarrival) {
        return "sporadic [" + ms(*sp.min_interarrival) + ", " + ms(*sp.max_interarrival) + "]";
    }
    return "sporadic";
}

}  // namespace

ordered_json diagnostic_to_json(const Diagnostic& d) {
    ordered_json j;
    j["severity"] = to_string(d.severity);
    j["code"] = d.code;
    j["message"] = d.message;
    j["file"] = d.span.file;
    j["line"] = d.span.start_line;
    j["col"] = d.span.start_col;
    return j;
}

ordered_json report_to_json(const ResolvedSystem& s, const AnalysisReport& report) {
    ordered_json j;
    j["reportVersion"] = 1;
    j["system"] = s.name;
    j["latencyConvention"] = "first-to-first";

    auto& freqs = j["frequencies"] = ordered_json::array();
    for (const auto& f : report.frequencies) {
        ordered_json e;
        e["instance"] = s.instances[f.task.instance].name;
        e["task"] = s.task_def(f.task).name;
        e["hz"] = f.value ? ordered_json(f.value->value) : ordered_json(nullptr);
        e["unknownReason"] = f.value ? ordered_json(nullptr) : ordered_json(to_string(f.reason));
        freqs.push_back(std::move(e));
    }

    auto& sampling = j["sampling"] = ordered_json::array();
    for (const auto& sc : report.sampling) {
        const auto& conn = s.connections[sc.connection];
        ordered_json e;
        e["from"] = s.port_name(conn.from);
        e["to"] = s.port_name(conn.to);
        e["consumer"] = s.task_name(sc.consumer);
        e["mode"] = to_string(sc.mode);
        e["class"] = to_string(sc.kind);
        e["ratio"] = sc.kind == SamplingKind::Unknown ? ordered_json(nullptr) : ordered_json(sc.ratio);
        sampling.push_back(std::move(e));
    }

    auto& chains = j["chains"] = ordered_json::array();
    for (const auto& ca : report.chains) {
        const auto& chain = s.chains[ca.chain];
        ordered_json e;
        e["name"] = chain.name;
        auto& stages = e["stages"] = ordered_json::array();
        for (const auto& st : chain.stages) {
            stages.push_back(s.port_name(st));
        }
        e["bestNs"] = ca.latency.best.count();
        e["worstNs"] = nullable_ns(ca.latency.worst);
        e["jitterNs"] = nullable_ns(ca.latency.jitter());
        e["bestMs"] = to_millis(ca.latency.best);
        e["worstMs"] = nullable_ms(ca.latency.worst);
        e["jitterMs"] = nullable_ms(ca.latency.jitter());
        e["unboundedReason"] = ca.latency.reason ? ordered_json(to_string(*ca.latency.reason)) : ordered_json(nullptr);
        if (chain.spec) {
            e["spec"] = {{"minNs", chain.spec->min_latency.count()}, {"maxNs", chain.spec->max_latency.count()}};
        } else {
            e["spec"] = nullptr;
        }
        e["verdict"] = to_string(ca.verdict);
        auto& hops = e["hops"] = ordered_json::array();
        for (const auto& h : ca.hops) {
            ordered_json he;
            he["consumer"] = s.task_name(h.consumer);
            he["mode"] = to_string(h.mode);
            he["bestNs"] = h.best.count();
            he["worstNs"] = nullable_ns(h.worst);
            he["unboundedReason"] = h.reason ? ordered_json(to_string(*h.reason)) : ordered_json(nullptr);
            hops.push_back(std::move(he));
        }
        chains.push_back(std::move(e));
    }

    auto& diags = j["diagnostics"] = ordered_json::array();
    for (const auto& d : report.diagnostics) {
        diags.push_back(diagnostic_to_json(d));
    }
    return j;
}

std::string report_to_text(const ResolvedSystem& s, const AnalysisReport& report) {
    std::string out = fmt::format("system {}\nlatency convention: first-to-first\n\nActivation frequencies\n", s.name);
    for (const auto& f : report.frequencies) {
        const std::string value = f.value ? format_number(f.value->value) + " Hz" : std::string("unknown (") +
                                                                                         to_string(f.reason) + ")";
        out += fmt::format("  {:<40} {:<28} {}\n", s.task_name(f.task), value, source_text(s, f.task));
    }

    out += "\nSampling\n";
    if (report.sampling.empty()) {
        out += "  (no links)\n";
    }
    for (const auto& sc : report.sampling) {
        const auto& conn = s.connections[sc.connection];
        std::string cls = to_string(sc.kind);
        if (sc.kind == SamplingKind::Oversampling || sc.kind == SamplingKind::Undersampling) {
            cls += " x" + format_number(sc.ratio);
        }
        out += fmt::format("  {:<60} {:<15} {}\n", s.port_name(conn.from) + " -> " + s.task_name(sc.consumer),
                           to_string(sc.mode), cls);
    }

    out += "\nCause-effect chains\n";
    if (report.chains.empty()) {
        out += "  (none)\n";
    }
    for (const auto& ca : report.chains) {
        const auto& chain = s.chains[ca.chain];
        const std::string worst = ca.latency.worst ? ms(*ca.latency.worst) : "unbounded";
        const std::string jitter = ca.latency.worst ? ms(*ca.latency.jitter()) : "-";
        const std::string spec =
            chain.spec ? "[" + ms(chain.spec->min_latency) + ", " + ms(chain.spec->max_latency) + "]" : "none";
        out += fmt::format("  {}\n    best {}  worst {}  jitter {}  spec {}  {}\n", chain.name, ms(ca.latency.best),
                           worst, jitter, spec, to_string(ca.verdict));
        if (ca.latency.reason) {
            out += fmt::format("    unbounded: {}\n", to_string(*ca.latency.reason));
        }
        for (const auto& h : ca.hops) {
            const std::string hw = h.worst ? ms(*h.worst) : std::string("unbounded (") +
                                                                 to_string(h.reason.value_or(
                                                                     BlockingReason::UnknownTiming)) +
                                                                 ")";
            out += fmt::format("    -> {:<40} {:<15} [{}, {}]\n", s.task_name(h.consumer), to_string(h.mode),
                               ms(h.best), hw);
        }
    }
    return out;
}

ordered_json activation_table(const ResolvedSystem& s) {
    ordered_json j;
    j["tableVersion"] = 1;
    j["system"] = s.name;
    auto& rows = j["rows"] = ordered_json::array();
    for (const auto& t : s.tasks()) {
        const auto& cfg = s.task_config(t);
        const auto& comp = s.component_of(t.instance);
        ordered_json r;
        r["instance"] = s.instances[t.instance].name;
        r["component"] = comp.name;
        r["task"] = comp.tasks[t.task].name;
        r["taskKind"] = to_string(comp.tasks[t.task].kind);
        r["sourceKind"] = nullptr;
        r["frequencyHz"] = nullptr;
        r["trigger"] = nullptr;
        r["prescaler"] = nullptr;
        r["minInterarrivalNs"] = nullptr;
        r["maxInterarrivalNs"] = nullptr;
        if (const auto* dt = std::get_if<ResolvedDataTrigger>(&cfg.source)) {
            r["sourceKind"] = "datatriggered";
            r["trigger"] = dt->port.kind == TriggerPort::Kind::Plain ? comp.in_ports[dt->port.index].name
                                                                      : comp.compounds[dt->port.index].name;
            r["prescaler"] = dt->prescaler;
        } else if (const auto* pt = std::get_if<PeriodicTimer>(&cfg.source)) {
            r["sourceKind"] = "periodic";
            r["frequencyHz"] = pt->frequency.value;
        } else {
            const auto& sp = std::get<Sporadic>(cfg.source);
            r["sourceKind"] = "sporadic";
            r["minInterarrivalNs"] = nullable_ns(sp.min_interarrival);
            r["maxInterarrivalNs"] = nullable_ns(sp.max_interarrival);
        }
        r["bcetNs"] = cfg.exec.bcet.count();
        r["wcetNs"] = cfg.exec.wcet.count();
        rows.push_back(std::move(r));
    }
    return j;
}

}  // namespace cechain
