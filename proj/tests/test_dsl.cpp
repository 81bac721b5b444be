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

#include "cechain/dsl.hpp"
#include "cechain/generate.hpp"
#include "support.hpp"

using namespace cechain;
using namespace cechain::testing;
using namespace std::chrono_literals;

TEST_CASE("Base component parses into ports and two tasks") {
    const auto base = component(read_text(example("Base.ccd")));
    CHECK(base.name == "Base");
    REQUIRE(base.in_ports.size() == 1);
    CHECK(base.in_ports[0].name == "navVelIn");
    CHECK(base.in_ports[0].message_type == "VelocityCommand");
    REQUIRE(base.out_ports.size() == 2);
    CHECK(base.out_ports[0].name == "odomOut");
    REQUIRE(base.tasks.size() == 2);

    const auto& pose = base.tasks[0];
    CHECK(pose.name == "PoseUpdateTask");
    CHECK(pose.kind == TaskKind::Cooperative);
    REQUIRE(pose.constraint);
    CHECK(pose.constraint->min_freq == Hertz{50});
    CHECK(pose.constraint->max_freq == Hertz{50});
    CHECK_FALSE(pose.constraint->changeable);
    CHECK(pose.constraint->fixed_frequency() == Hertz{50});

    const auto& motion = base.tasks[1];
    REQUIRE(motion.reads.size() == 1);
    CHECK(motion.reads[0].port == "navVelIn");
    CHECK(motion.reads[0].dependency == Dependency::Strict);
    CHECK(motion.writes_port("baseStateOut"));
    CHECK_FALSE(motion.constraint);
}

TEST_CASE("empty component is valid") {
    auto r = dsl::parse_component_definition("component C { }", "c.ccd");
    REQUIRE(r.ok());
    CHECK(r.diagnostics.empty());
    CHECK(r.value->tasks.empty());
    CHECK(dsl::pretty_print(*r.value) == "component C {\n}\n");
}

TEST_CASE("every construct carries its source span") {
    auto r = dsl::parse_component_definition("component C {\n    outport o : T;\n    task X {\n        writes o;\n    }\n}\n",
                                             "c.ccd");
    REQUIRE(r.ok());
    CHECK(r.value->span.start_line == 1);
    CHECK(r.value->out_ports[0].span.start_line == 2);
    CHECK(r.value->out_ports[0].span.start_col == 5);
    CHECK(r.value->tasks[0].span.start_line == 3);
    CHECK(r.value->tasks[0].writes[0].span.start_line == 4);
    CHECK(r.value->tasks[0].writes[0].span.start_col == 16);
    CHECK(r.value->tasks[0].writes[0].span.file == "c.ccd");
}

TEST_CASE("writing an undeclared out-port is E101 on the offending name") {
    auto r = dsl::parse_component_definition("component C {\n    task X {\n        writes nowhere;\n    }\n}\n", "c.ccd");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "E101");
    CHECK(r.diagnostics[0].span.start_line == 3);
    CHECK(r.diagnostics[0].span.start_col == 16);
    CHECK(r.diagnostics[0].span.end_col == 22);
}

TEST_CASE("reading an undeclared in-port is E101") {
    auto r = dsl::parse_component_definition(
        "component C {\n    outport o : T;\n    task X {\n        reads ghost;\n        writes o;\n    }\n}\n", "c.ccd");
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "E101");
}

TEST_CASE("component syntax variants") {
    const auto c = component(R"(
// leading comment
component Fusion {
    inport a : Msg;   // trailing comment
    inport b : Msg;
    compound both = AND(a, b);
    compound any = OR(a, b);
    outport o : Res;
    preemptive task F {
        reads both;
        reads any optional;
        writes o;
        activation [0.5 Hz, 12.25 Hz];
    }
    task G {
        writes o;
    }
}
)");
    REQUIRE(c.compounds.size() == 2);
    CHECK(c.compounds[0].combination == Combination::And);
    CHECK(c.compounds[1].combination == Combination::Or);
    CHECK(c.compounds[0].members.size() == 2);
    CHECK(c.tasks[0].kind == TaskKind::Preemptive);
    CHECK(c.tasks[1].kind == TaskKind::Preemptive);
    CHECK(c.tasks[0].reads[1].dependency == Dependency::Optional);
    CHECK(c.tasks[0].constraint->min_freq == Hertz{0.5});
    CHECK(c.tasks[0].constraint->max_freq == Hertz{12.25});
    CHECK(c.tasks[0].constraint->changeable);
}

TEST_CASE("a task must write at least one out-port") {
    auto r = dsl::parse_component_definition("component C {\n    task X {\n    }\n}\n", "c.ccd");
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].code == "E100");
}

TEST_CASE("bad frequency values are E102") {
    auto r = dsl::parse_component_definition(
        "component C {\n    outport o : T;\n    task X {\n        writes o;\n        activation [0 Hz, 5 Hz];\n    }\n}\n",
        "c.ccd");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "E102");
}

TEST_CASE("parser recovers and reports independent errors") {
    auto r = dsl::parse_component_definition(
        "component C {\n    inport a : X\n    outport b : Y;\n    inport : Z;\n    task T {\n        writes b;\n    }\n}\n",
        "c.ccd");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 2);
    CHECK(r.diagnostics[0].code == "E100");
    CHECK(r.diagnostics[0].span.start_line == 3);
    CHECK(r.diagnostics[1].code == "E100");
    CHECK(r.diagnostics[1].span.start_line == 4);
}

TEST_CASE("system recovery keeps going across items") {
    auto r = dsl::parse_system_configuration(
        "system S {\n    instance a A { }\n    connect a.x -> b.y\n    chain K = a.b;\n}\n", "s.csys");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 3);
    CHECK(r.diagnostics[0].code == "E200");
    CHECK(r.diagnostics[1].code == "E200");
    CHECK(r.diagnostics[2].code == "E201");
}

TEST_CASE("diagnostics are deterministic") {
    const std::string text = "component C {\n    inport a X;\n    task T { reads q; writes r; }\n}\n";
    const auto a = dsl::parse_component_definition(text, "c.ccd");
    const auto b = dsl::parse_component_definition(text, "c.ccd");
    REQUIRE(a.diagnostics.size() == b.diagnostics.size());
    for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
        CHECK(format(a.diagnostics[i]) == format(b.diagnostics[i]));
    }
}

TEST_CASE("columns count code points") {
    auto r = dsl::parse_component_definition("component C {\n    // Größe\n    inport \xC3\xA4 : T;\n}\n", "c.ccd");
    REQUIRE_FALSE(r.diagnostics.empty());
    CHECK(r.diagnostics[0].span.start_line == 3);
    CHECK(r.diagnostics[0].span.start_col == 12);
}

TEST_CASE("navigation system parses with the fast reactive chain of four stages") {
    const auto s = system_config(read_text(example("navigation.csys")));
    CHECK(s.name == "Navigation");
    CHECK(s.instances.size() == 5);
    CHECK(s.connections.size() == 7);
    REQUIRE(s.chains.size() == 2);
    CHECK(s.chains[0].name == "FastReactiveNavigationLoop");
    REQUIRE(s.chains[0].stages.size() == 4);
    CHECK(s.chains[0].stages[0].instance == "base");
    CHECK(s.chains[0].stages[0].port == "odomOut");
    CHECK(s.chains[0].stages[3].port == "baseStateOut");
    REQUIRE(s.chains[0].spec);
    CHECK(s.chains[0].spec->max_latency == 200ms);
    CHECK(s.chains[1].name == "MapBasedPlanningLoop");
}

TEST_CASE("activation sources") {
    const auto s = system_config(R"(
system S {
    instance i : C {
        task A periodic 10 Hz;
        task B datatriggered in / 4 exec [0.001 s, 2 ms];
        task C datatriggered in;
        task D sporadic;
        task E sporadic [0.05 s, 0.2 s] exec [100 us, 0.0002 s];
    }
    connect i.o -> j.p delay 1.5 ms;
    connect i.o -> j.q;
    chain K = i.o -> j.r expect [1 ms, 0.5 s];
}
)");
    const auto& t = s.instances[0].tasks;
    REQUIRE(t.size() == 5);
    CHECK(std::get<PeriodicTimer>(t[0].source).frequency == Hertz{10});
    CHECK_FALSE(t[0].exec);
    CHECK(std::get<DataTriggered>(t[1].source) == DataTriggered{"in", 4});
    CHECK(t[1].exec == ExecTime{1ms, 2ms});
    CHECK(std::get<DataTriggered>(t[2].source).prescaler == 1);
    CHECK(std::get<Sporadic>(t[3].source) == Sporadic{});
    CHECK(std::get<Sporadic>(t[4].source) == Sporadic{50ms, 200ms});
    CHECK(t[4].exec == ExecTime{100us, 200us});
    CHECK(s.connections[0].delay == 1500us);
    CHECK(s.connections[1].delay == Duration{0});
    CHECK(s.chains[0].spec == E2ELatencySpec{1ms, 500ms});
}

TEST_CASE("chain with a single stage is E201") {
    auto r = dsl::parse_system_configuration("system S {\n    chain K = a.b;\n}\n", "s.csys");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "E201");
    CHECK(r.diagnostics[0].span.start_line == 2);
}

TEST_CASE("system value errors are E202") {
    for (const char* bad : {"task A periodic 0 Hz;", "task A datatriggered p / 0;", "task A sporadic [0.2 s, 0.1 s];",
                            "task A periodic 5 Hz exec [0.002 s, 0.001 s];"}) {
        CAPTURE(bad);
        auto r = dsl::parse_system_configuration(std::string("system S {\n    instance i : C {\n        ") + bad +
                                                     "\n    }\n}\n",
                                                 "s.csys");
        CHECK_FALSE(r.ok());
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].code == "E202");
    }
    auto spec = dsl::parse_system_configuration("system S {\n    chain K = a.b -> c.d expect [9 ms, 3 ms];\n}\n", "s.csys");
    REQUIRE(spec.diagnostics.size() == 1);
    CHECK(spec.diagnostics[0].code == "E202");
}

TEST_CASE("pretty printer output is canonical") {
    const auto s = system_config("system S { instance i : C { task A datatriggered p / 1 exec [1 ms, 2 ms]; } "
                                 "connect i.o -> j.p delay 0 s; chain K = i.o -> j.r expect [0 ms, 0.25 s]; }");
    CHECK(dsl::pretty_print(s) ==
          "system S {\n"
          "    instance i : C {\n"
          "        task A datatriggered p exec [0.001 s, 0.002 s];\n"
          "    }\n"
          "    connect i.o -> j.p;\n"
          "    chain K = i.o -> j.r expect [0 ms, 250 ms];\n"
          "}\n");
}

namespace {

template <typename T, typename Parse>
void check_round_trip(const T& model, Parse parse) {
    const auto text = dsl::pretty_print(model);
    auto again = parse(text, "rt");
    REQUIRE(again.ok());
    CHECK(again.diagnostics.empty());
    CHECK(*again.value == model);
    CHECK(dsl::pretty_print(*again.value) == text);
}

}  // namespace

TEST_CASE("bundled models round-trip") {
    for (const auto& f : navigation_components()) {
        CAPTURE(f);
        check_round_trip(component(read_text(example(f))), dsl::parse_component_definition);
    }
    check_round_trip(system_config(read_text(example("navigation.csys"))), dsl::parse_system_configuration);
}

TEST_CASE("generated models round-trip") {
    GeneratorLimits limits;
    limits.fractional = true;
    limits.unbounded_sporadic = true;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        CAPTURE(seed);
        const auto m = generate_model(seed, limits);
        for (const auto& c : m.components) {
            check_round_trip(c, dsl::parse_component_definition);
        }
        check_round_trip(m.config, dsl::parse_system_configuration);
    }
}

TEST_CASE("structural equality ignores spans but not content") {
    const auto a = component("component C { outport o : T; task X { writes o; } }");
    const auto b = component("component C {\n\n    outport o : T;\n    task X {\n        writes o;\n    }\n}\n");
    CHECK(a == b);
    CHECK_FALSE(a.out_ports[0].span.same_location(b.out_ports[0].span));
    const auto c = component("component C { outport o : U; task X { writes o; } }");
    CHECK_FALSE(a == c);
}
