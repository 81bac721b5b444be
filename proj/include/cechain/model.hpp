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

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cechain/diagnostic.hpp"
#include "cechain/time.hpp"

namespace cechain {

// ---------------------------------------------------------------------------
// Component definitions (written by the robotics expert)
// ---------------------------------------------------------------------------

enum class TaskKind { Preemptive, Cooperative };
enum class Dependency { Strict, Optional };
enum class Combination { And, Or };

/// A name as written in the source, with the location of the reference.
struct NameRef {
    std::string name;
    SourceSpan span;

    friend bool operator==(const NameRef&, const NameRef&) = default;
};

struct InPortDef {
    std::string name;
    std::string message_type;
    SourceSpan span;

    friend bool operator==(const InPortDef&, const InPortDef&) = default;
};

struct OutPortDef {
    std::string name;
    std::string message_type;
    SourceSpan span;

    friend bool operator==(const OutPortDef&, const OutPortDef&) = default;
};

/// Groups in-ports into one activation trigger with AND/OR semantics.
struct CompoundInPortDef {
    std::string name;
    Combination combination = Combination::And;
    std::vector<NameRef> members;
    SourceSpan span;

    friend bool operator==(const CompoundInPortDef&, const CompoundInPortDef&) = default;
};

struct ReadDef {
    std::string port;  // in-port or compound in-port
    Dependency dependency = Dependency::Strict;
    SourceSpan span;

    friend bool operator==(const ReadDef&, const ReadDef&) = default;
};

/// Admissible activation range. `changeable == false` freezes it for the
/// integrator; with min == max it pins a fixed periodic rate.
struct ActivationConstraint {
    Hertz min_freq;
    Hertz max_freq;
    bool changeable = true;
    SourceSpan span;

    [[nodiscard]] std::optional<Hertz> fixed_frequency() const {
        if (!changeable && min_freq == max_freq) {
            return min_freq;
        }
        return std::nullopt;
    }

    friend bool operator==(const ActivationConstraint&, const ActivationConstraint&) = default;
};

struct TaskDef {
    std::string name;
    TaskKind kind = TaskKind::Preemptive;
    std::vector<ReadDef> reads;
    std::vector<NameRef> writes;
    std::optional<ActivationConstraint> constraint;
    SourceSpan span;

    [[nodiscard]] bool reads_port(std::string_view port) const;
    [[nodiscard]] bool writes_port(std::string_view port) const;

    friend bool operator==(const TaskDef&, const TaskDef&) = default;
};

struct ComponentDefinition {
    std::string name;
    std::vector<InPortDef> in_ports;
    std::vector<OutPortDef> out_ports;
    std::vector<CompoundInPortDef> compounds;
    std::vector<TaskDef> tasks;
    SourceSpan span;

    [[nodiscard]] std::optional<std::size_t> find_in_port(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_out_port(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_compound(std::string_view name) const;
    [[nodiscard]] std::optional<std::size_t> find_task(std::string_view name) const;

    /// Index of the first task whose `writes` names the out-port.
    [[nodiscard]] std::optional<std::size_t> writer_of(std::size_t out_port) const;

    friend bool operator==(const ComponentDefinition&, const ComponentDefinition&) = default;
};

// ---------------------------------------------------------------------------
// System configuration (written by the application expert), name-based
// ---------------------------------------------------------------------------

struct DataTriggered {
    std::string port;  // in-port or compound in-port of the task's component
    int prescaler = 1;

    friend bool operator==(const DataTriggered&, const DataTriggered&) = default;
};

struct PeriodicTimer {
    Hertz frequency;

    friend bool operator==(const PeriodicTimer&, const PeriodicTimer&) = default;
};

struct Sporadic {
    std::optional<Duration> min_interarrival;
    std::optional<Duration> max_interarrival;

    friend bool operator==(const Sporadic&, const Sporadic&) = default;
};

using ActivationSource = std::variant<DataTriggered, PeriodicTimer, Sporadic>;

struct ExecTime {
    Duration bcet{0};
    Duration wcet{0};

    friend bool operator==(const ExecTime&, const ExecTime&) = default;
};

struct TaskConfig {
    std::string task;
    ActivationSource source;
    std::optional<ExecTime> exec;  // absent means (0, 0)
    SourceSpan span;

    friend bool operator==(const TaskConfig&, const TaskConfig&) = default;
};

struct ComponentInstance {
    std::string name;
    NameRef component;
    std::vector<TaskConfig> tasks;
    SourceSpan span;

    friend bool operator==(const ComponentInstance&, const ComponentInstance&) = default;
};

/// `instance.port` as written in connections and chains.
struct PortEndpoint {
    std::string instance;
    std::string port;
    SourceSpan span;

    friend bool operator==(const PortEndpoint&, const PortEndpoint&) = default;
};

struct Connection {
    PortEndpoint from;
    PortEndpoint to;
    Duration delay{0};
    SourceSpan span;

    friend bool operator==(const Connection&, const Connection&) = default;
};

struct E2ELatencySpec {
    Duration min_latency{0};
    Duration max_latency{0};

    friend bool operator==(const E2ELatencySpec&, const E2ELatencySpec&) = default;
};

struct CauseEffectChain {
    std::string name;
    std::vector<PortEndpoint> stages;
    std::optional<E2ELatencySpec> spec;
    SourceSpan span;

    friend bool operator==(const CauseEffectChain&, const CauseEffectChain&) = default;
};

struct SystemConfiguration {
    std::string name;
    std::vector<ComponentInstance> instances;
    std::vector<Connection> connections;
    std::vector<CauseEffectChain> chains;
    SourceSpan span;

    friend bool operator==(const SystemConfiguration&, const SystemConfiguration&) = default;
};

// ---------------------------------------------------------------------------
// Resolved system: every name replaced by an index into the owning vector
// ---------------------------------------------------------------------------

struct TaskHandle {
    std::size_t instance = 0;
    std::size_t task = 0;

    friend bool operator==(const TaskHandle&, const TaskHandle&) = default;
    friend auto operator<=>(const TaskHandle&, const TaskHandle&) = default;
};

struct OutPortHandle {
    std::size_t instance = 0;
    std::size_t port = 0;

    friend bool operator==(const OutPortHandle&, const OutPortHandle&) = default;
    friend auto operator<=>(const OutPortHandle&, const OutPortHandle&) = default;
};

struct InPortHandle {
    std::size_t instance = 0;
    std::size_t port = 0;

    friend bool operator==(const InPortHandle&, const InPortHandle&) = default;
    friend auto operator<=>(const InPortHandle&, const InPortHandle&) = default;
};

/// A trigger port is either a plain in-port or a compound in-port.
struct TriggerPort {
    enum class Kind { Plain, Compound };
    Kind kind = Kind::Plain;
    std::size_t index = 0;

    friend bool operator==(const TriggerPort&, const TriggerPort&) = default;
};

struct ResolvedDataTrigger {
    TriggerPort port;
    int prescaler = 1;

    friend bool operator==(const ResolvedDataTrigger&, const ResolvedDataTrigger&) = default;
};

using ResolvedSource = std::variant<ResolvedDataTrigger, PeriodicTimer, Sporadic>;

struct ResolvedBinding {
    ResolvedSource source;
    SourceSpan span;

    friend bool operator==(const ResolvedBinding&, const ResolvedBinding&) = default;
};

struct ResolvedTaskConfig {
    ResolvedSource source;
    ExecTime exec;
    SourceSpan span;
    /// Further activation sources bound to the same task. Kept so validation
    /// can report them; a valid system has none.
    std::vector<ResolvedBinding> extra_bindings;

    friend bool operator==(const ResolvedTaskConfig&, const ResolvedTaskConfig&) = default;
};

struct ResolvedInstance {
    std::string name;
    std::size_t component = 0;
    std::vector<ResolvedTaskConfig> tasks;  // indexed like the component's tasks
    SourceSpan span;

    friend bool operator==(const ResolvedInstance&, const ResolvedInstance&) = default;
};

struct ResolvedConnection {
    OutPortHandle from;
    InPortHandle to;
    Duration delay{0};
    SourceSpan span;

    friend bool operator==(const ResolvedConnection&, const ResolvedConnection&) = default;
};

struct ResolvedChain {
    std::string name;
    std::vector<OutPortHandle> stages;
    std::vector<SourceSpan> stage_spans;
    std::optional<E2ELatencySpec> spec;
    SourceSpan span;

    friend bool operator==(const ResolvedChain&, const ResolvedChain&) = default;
};

/// Cross-linked object graph. Immutable once built by resolve().
struct ResolvedSystem {
    std::string name;
    std::vector<ComponentDefinition> components;
    std::vector<ResolvedInstance> instances;
    std::vector<ResolvedConnection> connections;
    std::vector<ResolvedChain> chains;

    [[nodiscard]] const ComponentDefinition& component_of(std::size_t instance) const {
        return components[instances[instance].component];
    }
    [[nodiscard]] const TaskDef& task_def(TaskHandle t) const { return component_of(t.instance).tasks[t.task]; }
    [[nodiscard]] const ResolvedTaskConfig& task_config(TaskHandle t) const {
        return instances[t.instance].tasks[t.task];
    }
    [[nodiscard]] const InPortDef& in_port(InPortHandle p) const { return component_of(p.instance).in_ports[p.port]; }
    [[nodiscard]] const OutPortDef& out_port(OutPortHandle p) const {
        return component_of(p.instance).out_ports[p.port];
    }

    /// All tasks in declaration order (instance-major).
    [[nodiscard]] std::vector<TaskHandle> tasks() const;
    [[nodiscard]] std::optional<TaskHandle> writer_of(OutPortHandle p) const;
    /// Indices of connections whose target is `p`.
    [[nodiscard]] std::vector<std::size_t> incoming(InPortHandle p) const;
    /// Plain in-ports read through a read entry (compounds expanded to members).
    [[nodiscard]] std::vector<std::size_t> plain_ports_read(TaskHandle t) const;
    /// Plain in-ports that make up a trigger port.
    [[nodiscard]] std::vector<std::size_t> trigger_members(std::size_t instance, TriggerPort trigger) const;
    [[nodiscard]] std::string task_name(TaskHandle t) const;
    [[nodiscard]] std::string port_name(OutPortHandle p) const;
    [[nodiscard]] std::string port_name(InPortHandle p) const;

    friend bool operator==(const ResolvedSystem&, const ResolvedSystem&) = default;
};

/// A name in the configuration that matches nothing in the library.
struct UnresolvedReference {
    std::string name;
    std::string kind;  // "component", "task", "port", "instance"
    SourceSpan span;
};

struct ResolveResult {
    std::optional<ResolvedSystem> system;
    std::vector<UnresolvedReference> unresolved;
    /// E203 for each unresolved name plus structural errors (E204 duplicate
    /// names, E205 unconfigured task).
    std::vector<Diagnostic> diagnostics;

    [[nodiscard]] bool ok() const { return system.has_value(); }
};

/// Links a configuration against a component library. Collects every
/// dangling name instead of stopping at the first.
[[nodiscard]] ResolveResult resolve(std::span<const ComponentDefinition> library, const SystemConfiguration& config);

[[nodiscard]] const char* to_string(TaskKind k);
[[nodiscard]] const char* to_string(Combination c);

}  // namespace cechain
