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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>
#include <unistd.h>
#include <string>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <nlohmann/json.hpp>

#include "cechain/analyze.hpp"
#include "cechain/cli.hpp"
#include "cechain/dsl.hpp"
#include "cechain/generate.hpp"
#include "cechain/sim.hpp"
#include "cechain/sweep.hpp"
#include "cechain/validate.hpp"
#include "rule_fixtures.hpp"
#include "support.hpp"

namespace {

using namespace cechain;
using namespace cechain::testing;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    CliRun r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::optional<TaskFrequency> frequency_of(const ResolvedSystem& s, const AnalysisReport& report,
                                          const std::string& task) {
    for (const auto& f : report.frequencies) {
        if (s.task_name(f.task) == task) {
            return f;
        }
    }
    return std::nullopt;
}

Outcome criterion1() {
    const auto start = Clock::now();
    const auto s = navigation();
    const auto report = analyze(s);
    const auto f = frequency_of(s, report, "mapper.MapperTask");
    const double elapsed = seconds_since(start);
    const bool exact = f && f->value && f->value->value == 4.0;
    return {exact && elapsed < 1.0,
            fmt::format("MapperTask = {} Hz, {:.3f} s", f && f->value ? format_number(f->value->value) : "unknown",
                        elapsed)};
}

Outcome criterion2() {
    const auto start = Clock::now();
    const auto s = navigation("variants/synchronous_oa.csys");
    const auto report = analyze(s);
    const auto f = frequency_of(s, report, "oa.OATask");
    const double elapsed = seconds_since(start);

    // the laser -> oa link and every warning attached to it
    std::optional<std::size_t> link;
    for (std::size_t i = 0; i < s.connections.size(); ++i) {
        if (s.port_name(s.connections[i].from) == "laser.laserOut" && s.port_name(s.connections[i].to) == "oa.laserIn") {
            link = i;
        }
    }
    std::size_t link_warnings = 0;
    if (link) {
        for (const auto& d : report.diagnostics) {
            if (d.span.same_location(s.connections[*link].span)) {
                ++link_warnings;
            }
        }
    }
    const bool ok = link && f && f->value && f->value->value == 10.0 && link_warnings == 0 && elapsed < 1.0;
    return {ok, fmt::format("OATask = {} Hz, {} warning(s) on laser.laserOut -> oa.laserIn, {:.3f} s",
                            f && f->value ? format_number(f->value->value) : "unknown", link_warnings, elapsed)};
}

Outcome criterion3() {
    const auto s = navigation();
    const auto report = analyze(s);
    std::optional<SamplingClass> laser_oa;
    for (const auto& c : report.sampling) {
        const auto& conn = s.connections[c.connection];
        if (s.port_name(conn.from) == "laser.laserOut" && s.task_name(c.consumer) == "oa.OATask") {
            laser_oa = c;
        }
    }
    const auto over = build({kProducer, R"(
component Consumer {
    inport in : Msg;
    outport res : Res;
    task ConsumeTask {
        reads in;
        writes res;
    }
}
)"},
                            R"(
system Rates {
    instance p : Producer {
        task ProduceTask periodic 10 Hz;
    }
    instance c : Consumer {
        task ConsumeTask periodic 50 Hz;
    }
    connect p.out -> c.in;
}
)");
    const auto over_report = analyze(over);
    const auto& oc = over_report.sampling.at(0);
    const bool ok = laser_oa && laser_oa->kind == SamplingKind::Undersampling && laser_oa->ratio == 4.0 &&
                    oc.kind == SamplingKind::Oversampling && oc.ratio == 5.0;
    return {ok, fmt::format("40 Hz -> 10 Hz timer: {} {}; 10 Hz -> 50 Hz timer: {} {}",
                            laser_oa ? to_string(laser_oa->kind) : "missing",
                            laser_oa ? format_number(laser_oa->ratio) : "-", to_string(oc.kind),
                            format_number(oc.ratio))};
}

std::vector<Diagnostic> all_diagnostics(const std::vector<std::string>& components, const std::string& system) {
    std::vector<Diagnostic> diags;
    std::vector<ComponentDefinition> library;
    for (const auto& c : components) {
        auto r = dsl::parse_component_definition(c, "fixture.ccd");
        diags.insert(diags.end(), r.diagnostics.begin(), r.diagnostics.end());
        if (r.value) {
            library.push_back(*r.value);
        }
    }
    auto sys = dsl::parse_system_configuration(system, "fixture.csys");
    diags.insert(diags.end(), sys.diagnostics.begin(), sys.diagnostics.end());
    if (!sys.value || library.size() != components.size()) {
        return diags;
    }
    auto resolved = resolve(library, *sys.value);
    diags.insert(diags.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
    if (resolved.system) {
        auto v = validate_all(*resolved.system);
        diags.insert(diags.end(), v.diagnostics.begin(), v.diagnostics.end());
    }
    return diags;
}

std::set<std::string> error_codes(const std::vector<Diagnostic>& diags) {
    std::set<std::string> out;
    for (const auto& d : diags) {
        if (d.severity == Severity::Error) {
            out.insert(d.code);
        }
    }
    return out;
}

Outcome criterion4() {
    std::size_t covered = 0;
    std::string failures;
    const auto fixtures = rule_fixtures();
    for (const auto& f : fixtures) {
        const auto bad = error_codes(all_diagnostics(f.bad_components, f.bad_system));
        const auto good = error_codes(all_diagnostics(f.good_components, f.good_system));
        if (bad == std::set<std::string>{f.code} && good.empty()) {
            ++covered;
        } else {
            failures += fmt::format(" {}(bad={}, good={})", f.rule, fmt::join(bad, ","), fmt::join(good, ","));
        }
    }
    return {covered == 12 && fixtures.size() == 12,
            fmt::format("{}/12 rules covered{}", covered, failures.empty() ? "" : ";" + failures)};
}

Outcome criterion5() {
    const auto start = Clock::now();
    SweepConfig cfg;
    cfg.systems = 20;
    cfg.seeds_per_system = 10;
    cfg.duration = std::chrono::seconds(30);
    const auto systems = prepare_sweep(cfg);
    const auto outcomes = run_sweep_parallel(systems, cfg);
    const double elapsed = seconds_since(start);
    std::size_t contained = 0;
    std::size_t violations = 0;
    std::size_t samples = 0;
    std::string first_violation;
    for (const auto& o : outcomes) {
        samples += o.samples;
        if (o.verdict == sim::Containment::Violation) {
            if (violations++ == 0) {
                first_violation = fmt::format("; first: system seed {} sim seed {} chain {} observed [{}, {}] ns vs [{}, {}] ns",
                                              o.generator_seed, o.sim_seed, o.chain, o.observed_min.count(),
                                              o.observed_max.count(), o.best.count(),
                                              o.worst ? o.worst->count() : -1);
            }
        } else if (o.verdict == sim::Containment::Contained) {
            ++contained;
        }
    }
    const bool ok = systems.size() >= 20 && violations == 0 && contained > 0 && elapsed < 60.0;
    return {ok, fmt::format("{} systems x {} seeds x 30 s: {} chain runs contained, {} violations, {} samples, "
                            "{:.2f} s{}",
                            systems.size(), cfg.seeds_per_system, contained, violations, samples, elapsed,
                            first_violation)};
}

Outcome criterion6() {
    const auto s = build({kProducer, kConsumer}, R"(
system Hop {
    instance p : Producer {
        task ProduceTask periodic 40 Hz;
    }
    instance c : Consumer {
        task ConsumeTask periodic 10 Hz;
    }
    connect p.out -> c.in;
    chain Hop = p.out -> c.res;
}
)");
    const auto analysis = analyze(s).chains.at(0).latency;
    Duration observed_max{0};
    bool within = analysis.worst.has_value();
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        sim::SimConfig cfg;
        cfg.duration = std::chrono::seconds(10);
        cfg.seed = seed;
        cfg.phase = sim::PhasePolicy::Random;
        const auto samples = sim::measure_chain(s, sim::simulate(s, cfg), 0);
        const auto v = sim::compare(analysis, samples);
        observed_max = std::max(observed_max, v.observed_max);
        within = within && v.count > 0 && v.observed_max <= std::chrono::milliseconds(100);
    }
    const auto worst = analysis.worst.value_or(Duration{0});
    const bool ok = within && worst == std::chrono::milliseconds(100) && observed_max * 10 > worst * 9;
    return {ok, fmt::format("analytic worst {} ms, observed max over 100 phases {} ms",
                            format_duration(worst, TimeUnit::Millis), format_duration(observed_max, TimeUnit::Millis))};
}

Outcome criterion7() {
    const auto slow = cli([] {
        auto a = navigation_args("variants/slow_oa.csys");
        a.insert(a.begin(), {"analyze", "--format", "json"});
        return a;
    }());
    const auto tight = cli([] {
        auto a = navigation_args("variants/tight_oa.csys");
        a.insert(a.begin(), {"analyze", "--format", "json"});
        return a;
    }());
    auto chain_of = [](const std::string& json) {
        const auto j = nlohmann::json::parse(json);
        for (const auto& c : j["chains"]) {
            if (c["name"] == "FastReactiveNavigationLoop") {
                return c;
            }
        }
        return nlohmann::json{};
    };
    const auto sc = chain_of(slow.out);
    const auto tc = chain_of(tight.out);
    const bool ok = slow.code == 2 && tight.code == 0 && sc["worstNs"] == 250'000'000 && sc["verdict"] == "VIOLATES_SPEC" &&
                    tc["worstNs"] == 200'000'000 && tc["verdict"] == "MEETS_SPEC";
    return {ok, fmt::format("worst 250 ms: {} exit {}; worst 200 ms: {} exit {}", sc.value("verdict", "?"), slow.code,
                            tc.value("verdict", "?"), tight.code)};
}

bool round_trips(const ComponentDefinition& c) {
    const auto text = dsl::pretty_print(c);
    auto r = dsl::parse_component_definition(text, "rt.ccd");
    return r.value && *r.value == c && !has_errors(r.diagnostics) && dsl::pretty_print(*r.value) == text;
}

bool round_trips(const SystemConfiguration& s) {
    const auto text = dsl::pretty_print(s);
    auto r = dsl::parse_system_configuration(text, "rt.csys");
    return r.value && *r.value == s && !has_errors(r.diagnostics) && dsl::pretty_print(*r.value) == text;
}

Outcome criterion8() {
    std::size_t failures = 0;
    std::size_t bundled = 0;
    for (const auto& f : navigation_components()) {
        failures += round_trips(component(read_text(example(f)))) ? 0 : 1;
        ++bundled;
    }
    for (const auto* f : {"navigation.csys", "variants/synchronous_oa.csys", "variants/slow_oa.csys",
                          "variants/tight_oa.csys", "variants/strict_budget.csys"}) {
        failures += round_trips(system_config(read_text(example(f)))) ? 0 : 1;
        ++bundled;
    }
    GeneratorLimits limits;
    limits.fractional = true;
    limits.unbounded_sporadic = true;
    std::size_t generated = 0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const auto m = generate_model(seed, limits);
        bool ok = round_trips(m.config);
        for (const auto& c : m.components) {
            ok = ok && round_trips(c);
        }
        auto resolved = resolve(m.components, m.config);
        ok = ok && resolved.system && validate_all(*resolved.system).ok();
        failures += ok ? 0 : 1;
        ++generated;
    }
    return {failures == 0,
            fmt::format("{} bundled files + {} generated models, {} failures", bundled, generated, failures)};
}

Outcome criterion9() {
    const auto dir = std::filesystem::temp_directory_path() / fmt::format("cechain-acceptance-{}", ::getpid());
    std::filesystem::create_directories(dir);
    auto run_once = [&](int k) {
        const auto trace = (dir / fmt::format("trace{}.jsonl", k)).string();
        auto args = navigation_args("navigation.csys");
        args.insert(args.begin(), {"simulate", "--seed", "42", "--duration", "60", "--compare", "--trace", trace});
        auto r = cli(args);
        return std::make_tuple(r.code, r.out, read_text(trace));
    };
    const auto a = run_once(1);
    const auto b = run_once(2);
    std::filesystem::remove_all(dir);
    const bool ok = std::get<0>(a) == 0 && a == b && !std::get<2>(a).empty();
    return {ok, fmt::format("two runs of simulate --seed 42: trace {} bytes, stats {} bytes, {}", std::get<2>(a).size(),
                            std::get<1>(a).size(), a == b ? "identical" : "different")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"frequency propagation: Mapper at 4 Hz", criterion1},
        {"data-triggered OATask runs synchronously at 10 Hz", criterion2},
        {"sampling classification factors", criterion3},
        {"validation rules V1-V12", criterion4},
        {"analysis contains simulated latencies", criterion5},
        {"bound tightness on a 40 Hz -> 10 Hz hop", criterion6},
        {"spec verdicts and exit codes", criterion7},
        {"DSL round-trip", criterion8},
        {"deterministic simulation", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::cout << fmt::format("[{}] criterion {}: {} -- {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                                 o.detail);
    }
    std::cout << fmt::format("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
