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

#include "cechain/model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cechain {

namespace {

template <typename T>
std::optional<std::size_t> find_named(const std::vector<T>& items, std::string_view name) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

}  // namespace

bool TaskDef::reads_port(std::string_view port) const {
    return std::any_of(reads.begin(), reads.end(), [&](const ReadDef& r) { return r.port == port; });
}

bool TaskDef::writes_port(std::string_view port) const {
    return std::any_of(writes.begin(), writes.end(), [&](const NameRef& w) { return w.name == port; });
}

std::optional<std::size_t> ComponentDefinition::find_in_port(std::string_view n) const { return find_named(in_ports, n); }
std::optional<std::size_t> ComponentDefinition::find_out_port(std::string_view n) const { return find_named(out_ports, n); }
std::optional<std::size_t> ComponentDefinition::find_compound(std::string_view n) const { return find_named(compounds, n); }
std::optional<std::size_t> ComponentDefinition::find_task(std::string_view n) const { return find_named(tasks, n); }

std::optional<std::size_t> ComponentDefinition::writer_of(std::size_t out_port) const {
    const auto& port = out_ports[out_port].name;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].writes_port(port)) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<TaskHandle> ResolvedSystem::tasks() const {
    std::vector<TaskHandle> out;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        for (std::size_t t = 0; t < instances[i].tasks.size(); ++t) {
            out.push_back({i, t});
        }
    }
    return out;
}

std::optional<TaskHandle> ResolvedSystem::writer_of(OutPortHandle p) const {
    if (auto t = component_of(p.instance).writer_of(p.port)) {
        return TaskHandle{p.instance, *t};
    }
    return std::nullopt;
}

std::vector<std::size_t> ResolvedSystem::incoming(InPortHandle p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < connections.size(); ++i) {
        if (connections[i].to == p) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> ResolvedSystem::trigger_members(std::size_t instance, TriggerPort trigger) const {
    const auto& comp = component_of(instance);
    if (trigger.kind == TriggerPort::Kind::Plain) {
        return {trigger.index};
    }
    std::vector<std::size_t> out;
    for (const auto& m : comp.compounds[trigger.index].members) {
        if (auto idx = comp.find_in_port(m.name)) {
            out.push_back(*idx);
        }
    }
    return out;
}

std::vector<std::size_t> ResolvedSystem::plain_ports_read(TaskHandle t) const {
    const auto& comp = component_of(t.instance);
    std::set<std::size_t> ports;
    for (const auto& r : task_def(t).reads) {
        if (auto idx = comp.find_in_port(r.port)) {
            ports.insert(*idx);
        } else if (auto c = comp.find_compound(r.port)) {
            for (auto m : trigger_members(t.instance, {TriggerPort::Kind::Compound, *c})) {
                ports.insert(m);
            }
        }
    }
    return {ports.begin(), ports.end()};
}

std::string ResolvedSystem::task_name(TaskHandle t) const {
    return instances[t.instance].name + "." + task_def(t).name;
}

std::string ResolvedSystem::port_name(OutPortHandle p) const {
    return instances[p.instance].name + "." + out_port(p).name;
}

std::string ResolvedSystem::port_name(InPortHandle p) const {
    return instances[p.instance].name + "." + in_port(p).name;
}

const char* to_string(TaskKind k) { return k == TaskKind::Preemptive ? "preemptive" : "cooperative"; }
const char* to_string(Combination c) { return c == Combination::And ? "AND" : "OR"; }

namespace {

class Resolver {
public:
    Resolver(std::span<const ComponentDefinition> library, const SystemConfiguration& config)
        : library_(library), config_(config) {}

    ResolveResult run() {
        ResolvedSystem sys;
        sys.name = config_.name;
        index_library(sys);

        std::map<std::string, std::size_t, std::less<>> instance_index;
        for (const auto& inst : config_.instances) {
            if (instance_index.count(inst.name) != 0) {
                error("E204", "duplicate instance name '" + inst.name + "'", inst.span);
                continue;
            }
            instance_index.emplace(inst.name, sys.instances.size());
            sys.instances.push_back(resolve_instance(inst));
        }

        for (const auto& conn : config_.connections) {
            auto from = endpoint(sys, instance_index, conn.from, /*out=*/true);
            auto to = endpoint(sys, instance_index, conn.to, /*out=*/false);
            if (from && to) {
                sys.connections.push_back({OutPortHandle{from->first, from->second},
                                           InPortHandle{to->first, to->second}, conn.delay, conn.span});
            }
        }

        std::set<std::string, std::less<>> chain_names;
        for (const auto& chain : config_.chains) {
            if (!chain_names.insert(chain.name).second) {
                error("E204", "duplicate chain name '" + chain.name + "'", chain.span);
                continue;
            }
            ResolvedChain rc{chain.name, {}, {}, chain.spec, chain.span};
            bool complete = true;
            for (const auto& stage : chain.stages) {
                if (auto ep = endpoint(sys, instance_index, stage, /*out=*/true)) {
                    rc.stages.push_back({ep->first, ep->second});
                    rc.stage_spans.push_back(stage.span);
                } else {
                    complete = false;
                }
            }
            if (complete) {
                sys.chains.push_back(std::move(rc));
            }
        }

        ResolveResult result;
        result.unresolved = std::move(unresolved_);
        for (const auto& u : result.unresolved) {
            diagnostics_.push_back(make_error("E203", "unresolved " + u.kind + " '" + u.name + "'", u.span));
        }
        result.diagnostics = std::move(diagnostics_);
        if (result.diagnostics.empty()) {
            result.system = std::move(sys);
        }
        return result;
    }

private:
    void error(std::string code, std::string message, const SourceSpan& span) {
        diagnostics_.push_back(make_error(std::move(code), std::move(message), span));
    }

    void unresolved(std::string name, std::string kind, const SourceSpan& span) {
        unresolved_.push_back({std::move(name), std::move(kind), span});
    }

    void index_library(ResolvedSystem& sys) {
        for (const auto& def : library_) {
            if (component_index_.count(def.name) != 0) {
                error("E204", "duplicate component definition '" + def.name + "'", def.span);
                continue;
            }
            component_index_.emplace(def.name, sys.components.size());
            sys.components.push_back(def);
        }
        components_ = &sys.components;
    }

    ResolvedInstance resolve_instance(const ComponentInstance& inst) {
        ResolvedInstance ri{inst.name, 0, {}, inst.span};
        auto it = component_index_.find(inst.component.name);
        if (it == component_index_.end()) {
            unresolved(inst.component.name, "component", inst.component.span);
            return ri;
        }
        ri.component = it->second;
        const auto& comp = (*components_)[it->second];

        std::vector<std::optional<ResolvedTaskConfig>> configs(comp.tasks.size());
        for (const auto& tc : inst.tasks) {
            auto task = comp.find_task(tc.task);
            if (!task) {
                unresolved(inst.name + "." + tc.task, "task", tc.span);
                continue;
            }
            auto source = resolve_source(comp, inst.name, tc);
            if (!source) {
                continue;
            }
            if (configs[*task]) {
                configs[*task]->extra_bindings.push_back({*source, tc.span});
                continue;
            }
            configs[*task] = ResolvedTaskConfig{*source, tc.exec.value_or(ExecTime{}), tc.span, {}};
        }
        for (std::size_t t = 0; t < comp.tasks.size(); ++t) {
            if (!configs[t]) {
                if (comp.find_task(comp.tasks[t].name) == t &&
                    std::none_of(inst.tasks.begin(), inst.tasks.end(),
                                 [&](const TaskConfig& tc) { return tc.task == comp.tasks[t].name; })) {
                    error("E205", "instance '" + inst.name + "' does not configure task '" + comp.tasks[t].name + "'",
                          inst.span);
                }
                continue;
            }
            ri.tasks.push_back(*configs[t]);
        }
        if (ri.tasks.size() != comp.tasks.size()) {
            ri.tasks.clear();
        }
        return ri;
    }

    std::optional<ResolvedSource> resolve_source(const ComponentDefinition& comp, const std::string& instance,
                                                 const TaskConfig& tc) {
        if (const auto* dt = std::get_if<DataTriggered>(&tc.source)) {
            if (auto p = comp.find_in_port(dt->port)) {
                return ResolvedDataTrigger{{TriggerPort::Kind::Plain, *p}, dt->prescaler};
            }
            if (auto c = comp.find_compound(dt->port)) {
                return ResolvedDataTrigger{{TriggerPort::Kind::Compound, *c}, dt->prescaler};
            }
            unresolved(instance + "." + dt->port, "port", tc.span);
            return std::nullopt;
        }
        if (const auto* pt = std::get_if<PeriodicTimer>(&tc.source)) {
            return *pt;
        }
        return std::get<Sporadic>(tc.source);
    }

    std::optional<std::pair<std::size_t, std::size_t>> endpoint(
        const ResolvedSystem& sys, const std::map<std::string, std::size_t, std::less<>>& instances,
        const PortEndpoint& ep, bool out) {
        auto it = instances.find(ep.instance);
        if (it == instances.end()) {
            unresolved(ep.instance, "instance", ep.span);
            return std::nullopt;
        }
        const auto& inst = config_.instances[config_index(ep.instance)];
        auto comp_it = component_index_.find(inst.component.name);
        if (comp_it == component_index_.end()) {
            // already reported against the instance
            return std::nullopt;
        }
        const auto& comp = sys.components[comp_it->second];
        auto port = out ? comp.find_out_port(ep.port) : comp.find_in_port(ep.port);
        if (!port) {
            unresolved(ep.instance + "." + ep.port, out ? "out-port" : "in-port", ep.span);
            return std::nullopt;
        }
        return std::pair{it->second, *port};
    }

    std::size_t config_index(std::string_view instance) const {
        for (std::size_t i = 0; i < config_.instances.size(); ++i) {
            if (config_.instances[i].name == instance) {
                return i;
            }
        }
        return 0;
    }

    std::span<const ComponentDefinition> library_;
    const SystemConfiguration& config_;
    const std::vector<ComponentDefinition>* components_ = nullptr;
    std::map<std::string, std::size_t, std::less<>> component_index_;
    std::vector<UnresolvedReference> unresolved_;
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace

ResolveResult resolve(std::span<const ComponentDefinition> library, const SystemConfiguration& config) {
    return Resolver(library, config).run();
}

}  // namespace cechain
