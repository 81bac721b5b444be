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

#include "cechain/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cechain/analyze.hpp"
#include "cechain/dsl.hpp"
#include "cechain/model.hpp"
#include "cechain/report.hpp"
#include "cechain/sim.hpp"
#include "cechain/validate.hpp"

namespace cechain::cli {

namespace {

namespace fs = std::filesystem;

struct Style {
    bool color = false;

    [[nodiscard]] std::string paint(std::string_view text, std::string_view code) const {
        if (!color) {
            return std::string(text);
        }
        return fmt::format("\x1b[{}m{}\x1b[0m", code, text);
    }

    [[nodiscard]] std::string diagnostic(const Diagnostic& d) const {
        std::string line = format(d);
        if (!color) {
            return line;
        }
        const std::string sev = to_string(d.severity);
        const auto pos = line.find(": " + sev + " ");
        if (pos != std::string::npos) {
            line.replace(pos + 2, sev.size(), paint(sev, d.severity == Severity::Error ? "1;31" : "1;33"));
        }
        return line;
    }
};

/// Raised for usage, I/O and unsupported-input failures (exit 3).
struct UsageFailure {
    std::string message;
};

struct LoadedModel {
    std::optional<ResolvedSystem> system;
    std::vector<Diagnostic> diagnostics;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in || fs::is_directory(path)) {
        throw UsageFailure{fmt::format("cannot read '{}'", path)};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw UsageFailure{fmt::format("cannot read '{}'", path)};
    }
    return ss.str();
}

/// parse → resolve → validate. Diagnostics are returned in file order, then
/// resolution, then validation.
LoadedModel load(const std::vector<std::string>& files) {
    std::vector<std::string> ccd;
    std::vector<std::string> csys;
    for (const auto& f : files) {
        const auto ext = fs::path(f).extension().string();
        if (ext == ".ccd") {
            ccd.push_back(f);
        } else if (ext == ".csys") {
            csys.push_back(f);
        } else {
            throw UsageFailure{fmt::format("'{}': expected a .ccd or .csys file", f)};
        }
    }
    if (ccd.empty() || csys.size() != 1) {
        throw UsageFailure{"expected at least one .ccd file and exactly one .csys file"};
    }

    LoadedModel model;
    std::vector<ComponentDefinition> library;
    bool parse_failed = false;
    for (const auto& path : ccd) {
        auto r = dsl::parse_component_definition(read_file(path), path);
        model.diagnostics.insert(model.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
        if (r.value) {
            library.push_back(std::move(*r.value));
        } else {
            parse_failed = true;
        }
    }
    auto sys = dsl::parse_system_configuration(read_file(csys.front()), csys.front());
    model.diagnostics.insert(model.diagnostics.end(), sys.diagnostics.begin(), sys.diagnostics.end());
    if (parse_failed || !sys.value) {
        return model;
    }

    auto resolved = resolve(library, *sys.value);
    if (!resolved.ok()) {
        // still report component-level rule violations alongside the dangling names
        for (const auto& c : library) {
            auto v = validate_component(c);
            model.diagnostics.insert(model.diagnostics.end(), v.diagnostics.begin(), v.diagnostics.end());
        }
        model.diagnostics.insert(model.diagnostics.end(), resolved.diagnostics.begin(), resolved.diagnostics.end());
        return model;
    }
    auto report = validate_all(*resolved.system);
    model.diagnostics.insert(model.diagnostics.end(), report.diagnostics.begin(), report.diagnostics.end());
    if (!has_errors(model.diagnostics)) {
        model.system = std::move(*resolved.system);
    }
    return model;
}

void print_diagnostics(const std::vector<Diagnostic>& diags, const Style& style, std::ostream& os) {
    for (const auto& d : diags) {
        os << style.diagnostic(d) << '\n';
    }
}

/// Loads the model for commands that need a valid system. Returns an exit
/// code when the model is not usable.
std::optional<int> load_valid(const std::vector<std::string>& files, const Style& style, std::ostream& err,
                              std::optional<ResolvedSystem>& out) {
    auto model = load(files);
    print_diagnostics(model.diagnostics, style, err);
    if (!model.system) {
        return kValidationFailed;
    }
    out = std::move(model.system);
    return std::nullopt;
}

std::optional<std::size_t> find_chain(const ResolvedSystem& s, const std::string& name) {
    for (std::size_t i = 0; i < s.chains.size(); ++i) {
        if (s.chains[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> selected_chains(const ResolvedSystem& s, const std::string& name) {
    std::vector<std::size_t> chains;
    if (name.empty()) {
        for (std::size_t i = 0; i < s.chains.size(); ++i) {
            chains.push_back(i);
        }
        return chains;
    }
    const auto idx = find_chain(s, name);
    if (!idx) {
        throw UsageFailure{fmt::format("unknown chain '{}'", name)};
    }
    chains.push_back(*idx);
    return chains;
}

std::string ms(Duration d) { return format_duration(d, TimeUnit::Millis) + " ms"; }

int cmd_check(const std::vector<std::string>& files, const Style& style, std::ostream& out) {
    auto model = load(files);
    print_diagnostics(model.diagnostics, style, out);
    const auto errors = std::count_if(model.diagnostics.begin(), model.diagnostics.end(),
                                      [](const Diagnostic& d) { return d.severity == Severity::Error; });
    const auto warnings = std::count_if(model.diagnostics.begin(), model.diagnostics.end(),
                                        [](const Diagnostic& d) { return d.severity == Severity::Warning; });
    out << fmt::format("{} error(s), {} warning(s)\n", errors, warnings);
    return errors == 0 ? kOk : kValidationFailed;
}

int cmd_analyze(const std::vector<std::string>& files, const std::string& chain, const std::string& format_name,
                const Style& style, std::ostream& out, std::ostream& err) {
    std::optional<ResolvedSystem> s;
    if (auto code = load_valid(files, style, err, s)) {
        return *code;
    }
    const auto chains = selected_chains(*s, chain);
    const auto report = analyze(*s, chains);
    if (format_name == "json") {
        out << report_to_json(*s, report).dump(2) << '\n';
    } else {
        out << report_to_text(*s, report);
        if (!report.diagnostics.empty()) {
            out << "\nWarnings\n";
            for (const auto& d : report.diagnostics) {
                out << "  " << style.diagnostic(d) << '\n';
            }
        }
    }
    return report.any_violation() ? kSpecViolation : kOk;
}

struct SimulateOptions {
    std::string duration = "10";
    std::uint64_t seed = 0;
    std::string chain;
    bool compare = false;
    std::string trace;
    std::string phase = "zero";
    std::string exec = "uniform";
    std::string format = "human";
};

int cmd_simulate(const std::vector<std::string>& files, const SimulateOptions& opt, const Style& style,
                 std::ostream& out, std::ostream& err) {
    sim::SimConfig cfg;
    const auto duration = parse_duration(opt.duration, TimeUnit::Seconds);
    if (!duration || duration->count() <= 0) {
        throw UsageFailure{fmt::format("--duration must be a positive number of seconds, got '{}'", opt.duration)};
    }
    cfg.duration = *duration;
    cfg.seed = opt.seed;
    cfg.phase = opt.phase == "random" ? sim::PhasePolicy::Random : sim::PhasePolicy::Zero;
    cfg.exec = opt.exec == "bcet" ? sim::ExecPolicy::Bcet
               : opt.exec == "wcet" ? sim::ExecPolicy::Wcet
                                    : sim::ExecPolicy::Uniform;

    std::optional<ResolvedSystem> s;
    if (auto code = load_valid(files, style, err, s)) {
        return *code;
    }
    const auto chains = selected_chains(*s, opt.chain);

    std::vector<sim::SimEvent> events;
    try {
        events = sim::simulate(*s, cfg);
    } catch (const sim::SimulationUnsupported& e) {
        throw UsageFailure{fmt::format("cannot simulate: {}", e.what())};
    }
    if (!opt.trace.empty()) {
        std::ofstream trace(opt.trace, std::ios::binary);
        if (!trace) {
            throw UsageFailure{fmt::format("cannot write '{}'", opt.trace)};
        }
        sim::write_trace_jsonl(trace, *s, cfg, events);
        if (!trace) {
            throw UsageFailure{fmt::format("cannot write '{}'", opt.trace)};
        }
    }

    std::optional<AnalysisReport> report;
    if (opt.compare) {
        report = analyze(*s, chains);
    }

    bool violation = false;
    nlohmann::ordered_json j;
    j["simVersion"] = 1;
    j["system"] = s->name;
    j["durationNs"] = cfg.duration.count();
    j["seed"] = cfg.seed;
    j["phase"] = opt.phase;
    j["exec"] = opt.exec;
    j["events"] = events.size();
    auto& jchains = j["chains"] = nlohmann::ordered_json::array();
    std::string text = fmt::format("simulation of {}: {} s, seed {}, phase {}, exec {}, {} events\n", s->name,
                                   format_duration(cfg.duration, TimeUnit::Seconds), cfg.seed, opt.phase, opt.exec,
                                   events.size());

    for (std::size_t k = 0; k < chains.size(); ++k) {
        const auto c = chains[k];
        const auto samples = sim::measure_chain(*s, events, c);
        const auto stats = sim::summarize(samples);
        nlohmann::ordered_json jc;
        jc["name"] = s->chains[c].name;
        jc["count"] = stats.count;
        jc["dropped"] = stats.dropped;
        text += fmt::format("  {}\n    samples {} (dropped {})", s->chains[c].name, stats.count, stats.dropped);
        if (stats.count > 0) {
            jc["minNs"] = stats.min.count();
            jc["maxNs"] = stats.max.count();
            jc["meanMs"] = stats.mean_ms;
            jc["p99Ns"] = stats.p99.count();
            text += fmt::format("  min {}  max {}  mean {} ms  p99 {}", ms(stats.min), ms(stats.max),
                                format_number(std::round(stats.mean_ms * 1e6) / 1e6), ms(stats.p99));
        }
        text += '\n';
        if (report) {
            const auto& analysis = report->chains[k].latency;
            const auto v = sim::compare(analysis, samples);
            violation = violation || v.verdict == sim::Containment::Violation;
            nlohmann::ordered_json jv;
            jv["bestNs"] = analysis.best.count();
            jv["worstNs"] = analysis.worst ? nlohmann::ordered_json(analysis.worst->count()) : nlohmann::ordered_json(nullptr);
            jv["verdict"] = sim::to_string(v.verdict);
            jc["comparison"] = jv;
            const std::string worst = analysis.worst ? ms(*analysis.worst) : "unbounded";
            const std::string colour = v.verdict == sim::Containment::Contained   ? "32"
                                       : v.verdict == sim::Containment::Violation ? "1;31"
                                                                                  : "33";
            text += fmt::format("    analytic [{}, {}]  {}\n", ms(analysis.best), worst,
                                style.paint(sim::to_string(v.verdict), colour));
        }
        jchains.push_back(jc);
    }

    if (opt.format == "json") {
        out << j.dump(2) << '\n';
    } else {
        out << text;
    }
    return violation ? kSpecViolation : kOk;
}

int cmd_export_table(const std::vector<std::string>& files, const std::string& path, const Style& style,
                     std::ostream& out, std::ostream& err) {
    std::optional<ResolvedSystem> s;
    if (auto code = load_valid(files, style, err, s)) {
        return *code;
    }
    const std::string text = activation_table(*s).dump(2) + "\n";
    if (path.empty() || path == "-") {
        out << text;
        return kOk;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        throw UsageFailure{fmt::format("cannot write '{}'", path)};
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cause-effect chain checker for component-based robotics software", "cechain"};
    app.require_subcommand(1);
    bool color = false;
    app.add_flag("--color", color, "Colorize human-readable output (ignored when CECHAIN_NO_COLOR is set)");

    std::vector<std::string> files;
    auto* check = app.add_subcommand("check", "Parse, resolve and validate a model");
    check->add_option("files", files, ".ccd component files and one .csys system file")->required();

    std::string chain;
    std::string format_name = "human";
    auto* analyze_cmd = app.add_subcommand("analyze", "Frequency, sampling and chain latency analysis");
    analyze_cmd->add_option("files", files, ".ccd component files and one .csys system file")->required();
    analyze_cmd->add_option("--chain", chain, "Analyze a single chain");
    analyze_cmd->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"human", "json"}));

    SimulateOptions sim_opt;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run the discrete-event simulator and measure chains");
    simulate_cmd->add_option("files", files, ".ccd component files and one .csys system file")->required();
    simulate_cmd->add_option("--duration", sim_opt.duration, "Simulated time in seconds")->capture_default_str();
    simulate_cmd->add_option("--seed", sim_opt.seed, "Random seed")->capture_default_str();
    simulate_cmd->add_option("--chain", sim_opt.chain, "Measure a single chain");
    simulate_cmd->add_flag("--compare", sim_opt.compare, "Check observed latencies against the analytic interval");
    simulate_cmd->add_option("--trace", sim_opt.trace, "Write the event trace as JSON lines");
    simulate_cmd->add_option("--phase", sim_opt.phase, "Initial phase policy")
        ->check(CLI::IsMember({"zero", "random"}))
        ->capture_default_str();
    simulate_cmd->add_option("--exec", sim_opt.exec, "Execution time policy")
        ->check(CLI::IsMember({"bcet", "wcet", "uniform"}))
        ->capture_default_str();
    simulate_cmd->add_option("--format", sim_opt.format, "Output format")->check(CLI::IsMember({"human", "json"}));

    std::string table_path;
    auto* export_cmd = app.add_subcommand("export-table", "Write the per-task activation table as JSON");
    export_cmd->add_option("files", files, ".ccd component files and one .csys system file")->required();
    export_cmd->add_option("--out", table_path, "Output path (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    Style style;
    style.color = color && std::getenv("CECHAIN_NO_COLOR") == nullptr;

    try {
        if (check->parsed()) {
            return cmd_check(files, style, out);
        }
        if (analyze_cmd->parsed()) {
            return cmd_analyze(files, chain, format_name, style, out, err);
        }
        if (simulate_cmd->parsed()) {
            return cmd_simulate(files, sim_opt, style, out, err);
        }
        return cmd_export_table(files, table_path, style, out, err);
    } catch (const UsageFailure& f) {
        err << "error: " << f.message << '\n';
        return kUsageError;
    }
}

}  // namespace cechain::cli
