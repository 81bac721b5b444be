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

#include <doctest.h>

#include "cechain/model.hpp"
#include "rule_fixtures.hpp"
#include "support.hpp"

using namespace cechain;
using namespace cechain::testing;

namespace {

ResolveResult try_resolve(const std::vector<std::string>& components, const std::string& system) {
    std::vector<ComponentDefinition> library;
    for (const auto& c : components) {
        library.push_back(component(c));
    }
    return resolve(library, system_config(system));
}

}  // namespace

TEST_CASE("navigation model resolves into a linked graph") {
    const auto s = navigation();
    CHECK(s.name == "Navigation");
    CHECK(s.instances.size() == 5);
    CHECK(s.tasks().size() == 6);
    CHECK(s.connections.size() == 7);
    REQUIRE(s.chains.size() == 2);
    CHECK(s.chains[0].stages.size() == 4);

    const auto& first = s.chains[0].stages[0];
    CHECK(s.port_name(first) == "base.odomOut");
    const auto writer = s.writer_of(first);
    REQUIRE(writer);
    CHECK(s.task_name(*writer) == "base.PoseUpdateTask");

    // the mapper is data-triggered on its laser in-port with prescaler 10
    for (const auto& t : s.tasks()) {
        if (s.task_name(t) == "mapper.MapperTask") {
            const auto& dt = std::get<ResolvedDataTrigger>(s.task_config(t).source);
            CHECK(dt.prescaler == 10);
            CHECK(dt.port.kind == TriggerPort::Kind::Plain);
            CHECK(s.incoming(InPortHandle{t.instance, dt.port.index}).size() == 1);
        }
    }
}

TEST_CASE("plain_ports_read and trigger_members expand compounds") {
    const auto s = build({kProducer, R"(
component Fusion {
    inport a : Msg;
    inport b : Msg;
    inport c : Msg;
    compound ab = AND(a, b);
    outport res : Res;
    task FuseTask {
        reads ab;
        reads c optional;
        writes res;
    }
}
)"},
                         R"(
system Fused {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance f : Fusion {
        task FuseTask datatriggered ab;
    }
    connect p.out -> f.a;
    connect p.out -> f.b;
}
)");
    const TaskHandle fuse{1, 0};
    CHECK(s.plain_ports_read(fuse) == std::vector<std::size_t>{0, 1, 2});
    const auto& dt = std::get<ResolvedDataTrigger>(s.task_config(fuse).source);
    CHECK(dt.port.kind == TriggerPort::Kind::Compound);
    CHECK(s.trigger_members(1, dt.port) == std::vector<std::size_t>{0, 1});
    CHECK(s.incoming(InPortHandle{1, 2}).empty());
    CHECK(s.port_name(InPortHandle{1, 1}) == "f.b");
}

TEST_CASE("resolution collects every dangling name") {
    const auto r = try_resolve({kProducer, kConsumer}, R"(
system Broken {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
        task Ghost periodic 5 Hz;
    }
    instance x : Missing {
    }
    instance c : Consumer {
        task ConsumeTask datatriggered nothing;
    }
    connect p.out -> c.in;
    connect p.gone -> c.in;
    connect q.out -> c.in;
    chain Flow = p.out -> c.nope;
}
)");
    CHECK_FALSE(r.ok());
    std::vector<std::string> names;
    for (const auto& u : r.unresolved) {
        names.push_back(u.kind + ":" + u.name);
    }
    CHECK(names == std::vector<std::string>{"task:p.Ghost", "component:Missing", "port:c.nothing", "out-port:p.gone",
                                            "instance:q", "out-port:c.nope"});
    std::size_t e203 = 0;
    for (const auto& d : r.diagnostics) {
        e203 += d.code == "E203" ? 1 : 0;
    }
    CHECK(e203 == r.unresolved.size());
}

TEST_CASE("resolution reports duplicates and unconfigured tasks") {
    const auto dup = try_resolve({kProducer}, R"(
system S {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
}
)");
    CHECK_FALSE(dup.ok());
    CHECK(codes(dup.diagnostics) == std::vector<std::string>{"E204"});

    const auto unconfigured = try_resolve({kProducer}, "system S { instance p : Producer { } }");
    CHECK_FALSE(unconfigured.ok());
    CHECK(codes(unconfigured.diagnostics) == std::vector<std::string>{"E205"});

    const auto twice = try_resolve({kProducer, kProducer}, kSingle);
    CHECK(codes(twice.diagnostics) == std::vector<std::string>{"E204"});
}

TEST_CASE("a task configured twice keeps the extra binding for validation") {
    const auto r = try_resolve({kProducer}, R"(
system S {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
        task ProduceTask sporadic [0.1 s, 0.2 s];
    }
}
)");
    REQUIRE(r.ok());
    const auto& cfg = r.system->instances[0].tasks[0];
    CHECK(std::holds_alternative<PeriodicTimer>(cfg.source));
    REQUIRE(cfg.extra_bindings.size() == 1);
    CHECK(std::holds_alternative<Sporadic>(cfg.extra_bindings[0].source));
}

TEST_CASE("missing exec defaults to zero") {
    const auto s = build({kProducer}, kSingle);
    CHECK(s.task_config({0, 0}).exec == ExecTime{});
}
