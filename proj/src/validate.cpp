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

#include "cechain/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace cechain {

namespace {

void add_error(ValidationReport& r, const char* code, std::string message, const SourceSpan& span) {
    r.diagnostics.push_back(make_error(code, std::move(message), span));
}

void add_warning(ValidationReport& r, const char* code, std::string message, const SourceSpan& span) {
    r.diagnostics.push_back(make_warning(code, std::move(message), span));
}

}  // namespace

ValidationReport validate_component(const ComponentDefinition& c) {
    ValidationReport report;

    // V2: ports share one namespace, tasks another
    std::map<std::string, const SourceSpan*, std::less<>> port_names;
    auto declare_port = [&](const std::string& name, const SourceSpan& span) {
        if (!port_names.emplace(name, &span).second) {
            add_error(report, "E302", "duplicate port name '" + name + "' in component '" + c.name + "'", span);
        }
    };
    for (const auto& p : c.in_ports) {
        declare_port(p.name, p.span);
    }
    for (const auto& p : c.out_ports) {
        declare_port(p.name, p.span);
    }
    for (const auto& p : c.compounds) {
        declare_port(p.name, p.span);
    }
    std::set<std::string, std::less<>> task_names;
    for (const auto& t : c.tasks) {
        if (!task_names.insert(t.name).second) {
            add_error(report, "E302", "duplicate task name '" + t.name + "' in component '" + c.name + "'", t.span);
        }
        std::set<std::string, std::less<>> read_names;
        for (const auto& r : t.reads) {
            if (!read_names.insert(r.port).second) {
                add_error(report, "E302", "task '" + t.name + "' reads '" + r.port + "' more than once", r.span);
            }
            if (!c.find_in_port(r.port) && !c.find_compound(r.port)) {
                add_error(report, "E101", "task '" + t.name + "' reads undeclared in-port '" + r.port + "'", r.span);
            }
        }
        for (const auto& w : t.writes) {
            if (!c.find_out_port(w.name)) {
                add_error(report, "E101", "task '" + t.name + "' writes undeclared out-port '" + w.name + "'",
                          w.span);
            }
        }
    }

    // V1
    for (const auto& p : c.out_ports) {
        std::vector<const TaskDef*> writers;
        for (const auto& t : c.tasks) {
            if (t.writes_port(p.name)) {
                writers.push_back(&t);
            }
        }
        if (writers.empty()) {
            add_error(report, "E301", "out-port '" + p.name + "' is not written by any task", p.span);
        } else if (writers.size() > 1) {
            for (std::size_t i = 1; i < writers.size(); ++i) {
                const auto& w = *std::find_if(writers[i]->writes.begin(), writers[i]->writes.end(),
                                              [&](const NameRef& n) { return n.name == p.name; });
                add_error(report, "E301",
                          "out-port '" + p.name + "' is written by both '" + writers[0]->name + "' and '" +
                              writers[i]->name + "'",
                          w.span);
            }
        }
    }

    // V3
    std::map<std::string, std::string, std::less<>> owner;
    for (const auto& cp : c.compounds) {
        if (cp.members.size() < 2) {
            add_error(report, "E303", "compound in-port '" + cp.name + "' needs at least two members", cp.span);
        }
        std::set<std::string, std::less<>> seen;
        for (const auto& m : cp.members) {
            if (!seen.insert(m.name).second) {
                add_error(report, "E303", "compound in-port '" + cp.name + "' lists '" + m.name + "' twice", m.span);
                continue;
            }
            if (c.find_compound(m.name)) {
                add_error(report, "E303",
                          "compound in-port '" + cp.name + "' cannot contain compound '" + m.name + "'", m.span);
            } else if (!c.find_in_port(m.name)) {
                add_error(report, "E303", "compound member '" + m.name + "' is not a declared in-port", m.span);
            } else if (auto [it, fresh] = owner.emplace(m.name, cp.name); !fresh) {
                add_error(report, "E303",
                          "in-port '" + m.name + "' already belongs to compound '" + it->second + "'", m.span);
            }
        }
    }

    // V4
    for (const auto& t : c.tasks) {
        if (!t.constraint) {
            continue;
        }
        const auto& k = *t.constraint;
        if (!(k.min_freq.value > 0.0) || k.min_freq > k.max_freq) {
            add_error(report, "E304",
                      "activation constraint of '" + t.name + "' needs 0 < min <= max (got [" +
                          format_number(k.min_freq.value) + " Hz, " + format_number(k.max_freq.value) + " Hz])",
                      k.span);
        }
    }
    return report;
}

namespace {

bool task_reads_plain(const ComponentDefinition& comp, const TaskDef& task, std::size_t port) {
    const auto& name = comp.in_ports[port].name;
    for (const auto& r : task.reads) {
        if (r.port == name) {
            return true;
        }
        if (auto c = comp.find_compound(r.port)) {
            const auto& members = comp.compounds[*c].members;
            if (std::any_of(members.begin(), members.end(), [&](const NameRef& m) { return m.name == name; })) {
                return true;
            }
        }
    }
    return false;
}

std::string trigger_name(const ComponentDefinition& comp, TriggerPort p) {
    return p.kind == TriggerPort::Kind::Plain ? comp.in_ports[p.index].name : comp.compounds[p.index].name;
}

}  // namespace

ValidationReport validate_system(const ResolvedSystem& s) {
    ValidationReport report;

    std::map<InPortHandle, std::size_t> incoming;
    for (std::size_t i = 0; i < s.connections.size(); ++i) {
        const auto& conn = s.connections[i];
        // V7
        const auto& from = s.out_port(conn.from);
        const auto& to = s.in_port(conn.to);
        if (from.message_type != to.message_type) {
            add_error(report, "E307",
                      "connection " + s.port_name(conn.from) + " -> " + s.port_name(conn.to) + " joins '" +
                          from.message_type + "' with '" + to.message_type + "'",
                      conn.span);
        }
        // V8
        if (++incoming[conn.to] > 1) {
            add_error(report, "E308", "in-port " + s.port_name(conn.to) + " already has an incoming connection",
                      conn.span);
        }
    }

    for (const auto& th : s.tasks()) {
        const auto& comp = s.component_of(th.instance);
        const auto& def = s.task_def(th);
        const auto& cfg = s.task_config(th);
        const std::string who = s.task_name(th);

        // V5 and bindings of more than one source
        int data_triggers = std::holds_alternative<ResolvedDataTrigger>(cfg.source) ? 1 : 0;
        for (const auto& extra : cfg.extra_bindings) {
            if (std::holds_alternative<ResolvedDataTrigger>(extra.source) && ++data_triggers > 1) {
                add_error(report, "E305", "task " + who + " has more than one data-triggered in-port", extra.span);
            } else {
                add_error(report, "E313", "task " + who + " is bound to more than one activation source",
                          extra.span);
            }
        }

        if (const auto* dt = std::get_if<ResolvedDataTrigger>(&cfg.source)) {
            const std::string port = trigger_name(comp, dt->port);
            // V6
            const bool read = dt->port.kind == TriggerPort::Kind::Plain ? task_reads_plain(comp, def, dt->port.index)
                                                                         : def.reads_port(port);
            if (!read) {
                add_error(report, "E306", "task " + who + " is data-triggered by '" + port + "' which it does not read",
                          cfg.span);
            }
            // V12
            const auto members = s.trigger_members(th.instance, dt->port);
            std::size_t connected = 0;
            for (auto m : members) {
                connected += incoming.count(InPortHandle{th.instance, m});
            }
            const bool is_and = dt->port.kind == TriggerPort::Kind::Compound &&
                                comp.compounds[dt->port.index].combination == Combination::And;
            if (connected == 0 || (is_and && connected < members.size())) {
                add_error(report, "E312", "trigger port '" + port + "' of " + who + " has no incoming connection",
                          cfg.span);
            }
        }

        if (def.constraint) {
            const auto& k = *def.constraint;
            if (auto fixed = k.fixed_frequency()) {
                // V10
                const auto* pt = std::get_if<PeriodicTimer>(&cfg.source);
                const bool conforming =
                    std::holds_alternative<Sporadic>(cfg.source) || (pt != nullptr && pt->frequency == *fixed);
                if (!conforming) {
                    add_error(report, "E310",
                              "task " + who + " has a fixed activation of " + format_number(fixed->value) +
                                  " Hz; bind it to 'periodic " + format_number(fixed->value) + " Hz' or 'sporadic'",
                              cfg.span);
                }
            } else if (const auto* pt = std::get_if<PeriodicTimer>(&cfg.source)) {
                // V9
                if (pt->frequency < k.min_freq || pt->frequency > k.max_freq) {
                    add_error(report, "E309",
                              "timer of " + who + " at " + format_number(pt->frequency.value) +
                                  " Hz is outside its activation constraint [" + format_number(k.min_freq.value) +
                                  " Hz, " + format_number(k.max_freq.value) + " Hz]",
                              cfg.span);
                }
            }
        }

        // W401 / W402
        const auto* dt = std::get_if<ResolvedDataTrigger>(&cfg.source);
        for (const auto& r : def.reads) {
            std::vector<std::size_t> ports;
            if (auto p = comp.find_in_port(r.port)) {
                ports.push_back(*p);
            } else if (auto c = comp.find_compound(r.port)) {
                ports = s.trigger_members(th.instance, {TriggerPort::Kind::Compound, *c});
            }
            for (auto p : ports) {
                if (incoming.count(InPortHandle{th.instance, p}) != 0) {
                    continue;
                }
                const bool is_trigger =
                    dt != nullptr && (r.port == trigger_name(comp, dt->port) ||
                                      (dt->port.kind == TriggerPort::Kind::Plain && dt->port.index == p));
                if (is_trigger) {
                    continue;  // reported as E312
                }
                if (r.dependency == Dependency::Optional) {
                    add_warning(report, "W401",
                                "optional in-port " + s.instances[th.instance].name + "." + comp.in_ports[p].name +
                                    " read by " + who + " is not connected",
                                r.span);
                } else {
                    add_warning(report, "W402",
                                "strict in-port " + s.instances[th.instance].name + "." + comp.in_ports[p].name +
                                    " read by " + who + " is not connected",
                                r.span);
                }
            }
        }
    }

    // V11
    for (const auto& chain : s.chains) {
        for (std::size_t i = 0; i + 1 < chain.stages.size(); ++i) {
            const auto from = chain.stages[i];
            const auto to = chain.stages[i + 1];
            const auto writer = s.writer_of(to);
            bool reachable = false;
            if (writer) {
                const auto& comp = s.component_of(to.instance);
                const auto& def = s.task_def(*writer);
                for (const auto& conn : s.connections) {
                    if (conn.from == from && conn.to.instance == to.instance &&
                        task_reads_plain(comp, def, conn.to.port)) {
                        reachable = true;
                        break;
                    }
                }
            }
            if (!reachable) {
                const auto& span = i + 1 < chain.stage_spans.size() ? chain.stage_spans[i + 1] : chain.span;
                add_error(report, "E311",
                          "chain '" + chain.name + "': " + s.port_name(to) + " is not reachable from " +
                              s.port_name(from),
                          span);
            }
        }
    }
    return report;
}

ValidationReport validate_all(const ResolvedSystem& s) {
    ValidationReport report;
    for (const auto& c : s.components) {
        auto r = validate_component(c);
        report.diagnostics.insert(report.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    }
    auto r = validate_system(s);
    report.diagnostics.insert(report.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    return report;
}

}  // namespace cechain
