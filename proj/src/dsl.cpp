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

#include "cechain/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <utility>

namespace cechain::dsl {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class TokenKind { Ident, Number, Punct, End, Invalid };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    SourceSpan span;
};

class Lexer {
public:
    Lexer(std::string_view text, std::string_view file) : text_(text), file_(file) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        for (;;) {
            skip_trivia();
            if (pos_ >= text_.size()) {
                out.push_back(make(TokenKind::End, pos_, line_, col_));
                return out;
            }
            const std::size_t start = pos_;
            const int line = line_;
            const int col = col_;
            const auto c = static_cast<unsigned char>(text_[pos_]);
            if (std::isalpha(c) || c == '_') {
                while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                               text_[pos_] == '_')) {
                    bump();
                }
                out.push_back(make(TokenKind::Ident, start, line, col));
            } else if (std::isdigit(c)) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    bump();
                }
                if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
                    std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                    bump();
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                        bump();
                    }
                }
                out.push_back(make(TokenKind::Number, start, line, col));
            } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
                bump();
                bump();
                out.push_back(make(TokenKind::Punct, start, line, col));
            } else if (std::string_view("{}[]():;,=./").find(static_cast<char>(c)) != std::string_view::npos) {
                bump();
                out.push_back(make(TokenKind::Punct, start, line, col));
            } else {
                bump();
                out.push_back(make(TokenKind::Invalid, start, line, col));
            }
        }
    }

private:
    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
            ++col_;  // count code points, not UTF-8 continuation bytes
        }
        ++pos_;
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                bump();
            } else if (text_.substr(pos_, 2) == "//") {
                while (pos_ < text_.size() && text_[pos_] != '\n') {
                    bump();
                }
            } else {
                return;
            }
        }
    }

    Token make(TokenKind kind, std::size_t start, int line, int col) const {
        const int end_col = pos_ > start ? col_ - 1 : col;
        return Token{kind, text_.substr(start, pos_ - start), SourceSpan{std::string(file_), line, col, line_, end_col}};
    }

    std::string_view text_;
    std::string_view file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ---------------------------------------------------------------------------
// Shared parser machinery
// ---------------------------------------------------------------------------

struct SyntaxError {
    Diagnostic diagnostic;
};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    return SourceSpan{a.file, a.start_line, a.start_col, b.end_line, b.end_col};
}

class ParserBase {
protected:
    ParserBase(std::string_view text, std::string_view file, std::string syntax_code,
               std::vector<std::string_view> item_keywords)
        : tokens_(Lexer(text, file).tokenize()),
          syntax_code_(std::move(syntax_code)),
          item_keywords_(std::move(item_keywords)) {}

    [[nodiscard]] const Token& peek(std::size_t ahead = 0) const {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }
    [[nodiscard]] const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    [[nodiscard]] bool at_end() const { return peek().kind == TokenKind::End; }

    const Token& advance() {
        const Token& t = peek();
        if (!at_end()) {
            ++pos_;
        }
        return t;
    }

    [[nodiscard]] bool check(std::string_view text) const {
        const Token& t = peek();
        return (t.kind == TokenKind::Ident || t.kind == TokenKind::Punct) && t.text == text;
    }

    bool accept(std::string_view text) {
        if (check(text)) {
            advance();
            return true;
        }
        return false;
    }

    const Token& expect(std::string_view text) {
        if (!check(text)) {
            fail("expected '" + std::string(text) + "' but found " + describe(peek()));
        }
        return advance();
    }

    const Token& expect_ident(std::string_view what) {
        if (peek().kind != TokenKind::Ident) {
            fail("expected " + std::string(what) + " but found " + describe(peek()));
        }
        return advance();
    }

    const Token& expect_number(std::string_view what) {
        if (peek().kind != TokenKind::Number) {
            fail("expected " + std::string(what) + " but found " + describe(peek()));
        }
        return advance();
    }

    [[noreturn]] void fail(std::string message) const { fail_at(std::move(message), peek().span); }

    [[noreturn]] void fail_at(std::string message, const SourceSpan& span) const {
        throw SyntaxError{make_error(syntax_code_, std::move(message), span)};
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokenKind::End:
                return "end of file";
            case TokenKind::Invalid:
                return "invalid character '" + std::string(t.text) + "'";
            default:
                return "'" + std::string(t.text) + "'";
        }
    }

    /// Skips to the end of the current item: past the next ';' or up to the
    /// '}' closing the enclosing block. Nested blocks are skipped whole.
    /// True if the next token is an item keyword at the start of a line: a
    /// likely resume point after a missing ';'.
    [[nodiscard]] bool at_item_start() const {
        if (pos_ == 0 || peek().span.start_line <= previous().span.end_line) {
            return false;
        }
        return std::any_of(item_keywords_.begin(), item_keywords_.end(),
                           [&](std::string_view kw) { return check(kw); });
    }

    /// Skips to the end of the failed item. `start` is where the item began;
    /// recovery never stops before making progress past it.
    void synchronize(std::size_t start) {
        int depth = 0;
        while (!at_end()) {
            if (depth == 0 && pos_ > start && at_item_start()) {
                return;
            }
            if (check("{")) {
                ++depth;
            } else if (check("}")) {
                if (depth == 0) {
                    return;
                }
                if (--depth == 0) {
                    advance();
                    return;
                }
            } else if (check(";") && depth == 0) {
                advance();
                return;
            }
            advance();
        }
    }

    void report(Diagnostic d) { diagnostics_.push_back(std::move(d)); }

    void error(std::string code, std::string message, const SourceSpan& span) {
        report(make_error(std::move(code), std::move(message), span));
    }

    Hertz parse_frequency(std::string_view value_code) {
        const Token& num = expect_number("frequency");
        expect("Hz");
        double value = 0.0;
        std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
        if (!(value > 0.0)) {
            error(std::string(value_code), "frequency must be positive", num.span);
        }
        return Hertz{value};
    }

    Duration parse_time(std::string_view value_code) {
        const Token& num = expect_number("duration");
        const Token& unit = expect_ident("time unit (s, ms, us)");
        TimeUnit scale{};
        if (unit.text == "s") {
            scale = TimeUnit::Seconds;
        } else if (unit.text == "ms") {
            scale = TimeUnit::Millis;
        } else if (unit.text == "us") {
            scale = TimeUnit::Micros;
        } else {
            fail_at("unknown time unit '" + std::string(unit.text) + "'", unit.span);
        }
        auto d = parse_duration(num.text, scale);
        if (!d) {
            error(std::string(value_code), "duration '" + std::string(num.text) + "' is not representable in nanoseconds",
                  num.span);
            return Duration{0};
        }
        return *d;
    }

    /// [a u, b u]
    std::pair<Duration, Duration> parse_time_interval(std::string_view value_code) {
        expect("[");
        const Duration lo = parse_time(value_code);
        expect(",");
        const Duration hi = parse_time(value_code);
        expect("]");
        return {lo, hi};
    }

    /// Runs `item` and converts a syntax error into a diagnostic plus recovery.
    template <typename F>
    void guarded(F&& item) {
        const std::size_t start = pos_;
        try {
            item();
        } catch (const SyntaxError& e) {
            report(e.diagnostic);
            synchronize(start);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::string syntax_code_;
    std::vector<std::string_view> item_keywords_;
    std::vector<Diagnostic> diagnostics_;
};

// ---------------------------------------------------------------------------
// Component files
// ---------------------------------------------------------------------------

class ComponentParser : ParserBase {
public:
    ComponentParser(std::string_view text, std::string_view file) : ParserBase(text, file, "E100",
                     {"inport", "outport", "compound", "task", "preemptive", "cooperative", "reads", "writes",
                      "activation"}) {}

    ParseResult<ComponentDefinition> run() {
        ComponentDefinition comp;
        bool header = false;
        guarded([&] {
            const Token& kw = expect("component");
            comp.name = std::string(expect_ident("component name").text);
            comp.span = kw.span;
            expect("{");
            header = true;
        });
        if (header) {
            while (!at_end() && !check("}")) {
                guarded([&] { item(comp); });
            }
            guarded([&] {
                const Token& close = expect("}");
                comp.span = join(comp.span, close.span);
                if (!at_end()) {
                    fail("unexpected " + describe(peek()) + " after component body");
                }
            });
        }
        check_references(comp);

        ParseResult<ComponentDefinition> result;
        result.diagnostics = std::move(diagnostics_);
        if (!has_errors(result.diagnostics)) {
            result.value = std::move(comp);
        }
        return result;
    }

private:
    void item(ComponentDefinition& comp) {
        const Token& start = peek();
        if (accept("inport")) {
            InPortDef port;
            port.name = std::string(expect_ident("port name").text);
            expect(":");
            port.message_type = std::string(expect_ident("message type").text);
            port.span = join(start.span, expect(";").span);
            comp.in_ports.push_back(std::move(port));
        } else if (accept("outport")) {
            OutPortDef port;
            port.name = std::string(expect_ident("port name").text);
            expect(":");
            port.message_type = std::string(expect_ident("message type").text);
            port.span = join(start.span, expect(";").span);
            comp.out_ports.push_back(std::move(port));
        } else if (accept("compound")) {
            comp.compounds.push_back(compound(start));
        } else if (check("preemptive") || check("cooperative") || check("task")) {
            comp.tasks.push_back(task(start));
        } else {
            fail("expected 'inport', 'outport', 'compound' or 'task' but found " + describe(peek()));
        }
    }

    CompoundInPortDef compound(const Token& start) {
        CompoundInPortDef c;
        c.name = std::string(expect_ident("compound name").text);
        expect("=");
        if (accept("AND")) {
            c.combination = Combination::And;
        } else if (accept("OR")) {
            c.combination = Combination::Or;
        } else {
            fail("expected 'AND' or 'OR' but found " + describe(peek()));
        }
        expect("(");
        do {
            const Token& m = expect_ident("in-port name");
            c.members.push_back({std::string(m.text), m.span});
        } while (accept(","));
        expect(")");
        c.span = join(start.span, expect(";").span);
        if (c.members.size() < 2) {
            fail_at("compound in-port '" + c.name + "' needs at least two members", c.span);
        }
        return c;
    }

    TaskDef task(const Token& start) {
        TaskDef t;
        if (accept("cooperative")) {
            t.kind = TaskKind::Cooperative;
        } else {
            accept("preemptive");
        }
        expect("task");
        const Token& name = expect_ident("task name");
        t.name = std::string(name.text);
        expect("{");
        while (!at_end() && !check("}")) {
            guarded([&] { task_statement(t); });
        }
        t.span = join(start.span, expect("}").span);
        if (t.writes.empty()) {
            error("E100", "task '" + t.name + "' must write at least one out-port", name.span);
        }
        return t;
    }

    void task_statement(TaskDef& t) {
        const Token& start = peek();
        if (accept("reads")) {
            ReadDef r;
            const Token& port = expect_ident("port name");
            r.port = std::string(port.text);
            r.span = port.span;
            if (accept("optional")) {
                r.dependency = Dependency::Optional;
            }
            expect(";");
            t.reads.push_back(std::move(r));
        } else if (accept("writes")) {
            const Token& port = expect_ident("out-port name");
            expect(";");
            t.writes.push_back({std::string(port.text), port.span});
        } else if (accept("activation")) {
            ActivationConstraint c;
            expect("[");
            c.min_freq = parse_frequency("E102");
            expect(",");
            c.max_freq = parse_frequency("E102");
            expect("]");
            if (accept("fixed")) {
                c.changeable = false;
            }
            c.span = join(start.span, expect(";").span);
            if (t.constraint) {
                error("E100", "task '" + t.name + "' has more than one activation constraint", c.span);
            }
            t.constraint = c;
        } else {
            fail("expected 'reads', 'writes' or 'activation' but found " + describe(peek()));
        }
    }

    void check_references(const ComponentDefinition& comp) {
        for (const auto& t : comp.tasks) {
            for (const auto& r : t.reads) {
                if (!comp.find_in_port(r.port) && !comp.find_compound(r.port)) {
                    error("E101", "task '" + t.name + "' reads undeclared in-port '" + r.port + "'", r.span);
                }
            }
            for (const auto& w : t.writes) {
                if (!comp.find_out_port(w.name)) {
                    error("E101", "task '" + t.name + "' writes undeclared out-port '" + w.name + "'", w.span);
                }
            }
        }
    }
};

// ---------------------------------------------------------------------------
// System files
// ---------------------------------------------------------------------------

class SystemParser : ParserBase {
public:
    SystemParser(std::string_view text, std::string_view file) : ParserBase(text, file, "E200", {"instance", "connect", "chain", "task"}) {}

    ParseResult<SystemConfiguration> run() {
        SystemConfiguration sys;
        bool header = false;
        guarded([&] {
            const Token& kw = expect("system");
            sys.name = std::string(expect_ident("system name").text);
            sys.span = kw.span;
            expect("{");
            header = true;
        });
        if (header) {
            while (!at_end() && !check("}")) {
                guarded([&] { item(sys); });
            }
            guarded([&] {
                const Token& close = expect("}");
                sys.span = join(sys.span, close.span);
                if (!at_end()) {
                    fail("unexpected " + describe(peek()) + " after system body");
                }
            });
        }

        ParseResult<SystemConfiguration> result;
        result.diagnostics = std::move(diagnostics_);
        if (!has_errors(result.diagnostics)) {
            result.value = std::move(sys);
        }
        return result;
    }

private:
    void item(SystemConfiguration& sys) {
        const Token& start = peek();
        if (accept("instance")) {
            sys.instances.push_back(instance(start));
        } else if (accept("connect")) {
            Connection c;
            c.from = endpoint();
            expect("->");
            c.to = endpoint();
            if (accept("delay")) {
                c.delay = parse_time("E202");
            }
            c.span = join(start.span, expect(";").span);
            sys.connections.push_back(std::move(c));
        } else if (accept("chain")) {
            sys.chains.push_back(chain(start));
        } else {
            fail("expected 'instance', 'connect' or 'chain' but found " + describe(peek()));
        }
    }

    PortEndpoint endpoint() {
        const Token& inst = expect_ident("instance name");
        expect(".");
        const Token& port = expect_ident("port name");
        return PortEndpoint{std::string(inst.text), std::string(port.text), join(inst.span, port.span)};
    }

    ComponentInstance instance(const Token& start) {
        ComponentInstance inst;
        inst.name = std::string(expect_ident("instance name").text);
        expect(":");
        const Token& comp = expect_ident("component name");
        inst.component = {std::string(comp.text), comp.span};
        expect("{");
        while (!at_end() && !check("}")) {
            guarded([&] { inst.tasks.push_back(task_config()); });
        }
        inst.span = join(start.span, expect("}").span);
        return inst;
    }

    TaskConfig task_config() {
        TaskConfig tc;
        const Token& start = expect("task");
        tc.task = std::string(expect_ident("task name").text);
        if (accept("periodic")) {
            tc.source = PeriodicTimer{parse_frequency("E202")};
        } else if (accept("datatriggered")) {
            DataTriggered dt;
            dt.port = std::string(expect_ident("trigger port").text);
            if (accept("/")) {
                const Token& k = expect_number("prescaler");
                int value = 0;
                const auto [ptr, ec] = std::from_chars(k.text.data(), k.text.data() + k.text.size(), value);
                if (ec != std::errc{} || ptr != k.text.data() + k.text.size() || value < 1) {
                    error("E202", "prescaler must be an integer >= 1", k.span);
                    value = 1;
                }
                dt.prescaler = value;
            }
            tc.source = dt;
        } else if (accept("sporadic")) {
            Sporadic sp;
            if (check("[")) {
                const SourceSpan at = peek().span;
                auto [lo, hi] = parse_time_interval("E202");
                if (lo <= Duration{0} || hi < lo) {
                    error("E202", "sporadic interarrival bounds need 0 < min <= max", at);
                }
                sp.min_interarrival = lo;
                sp.max_interarrival = hi;
            }
            tc.source = sp;
        } else {
            fail("expected 'periodic', 'datatriggered' or 'sporadic' but found " + describe(peek()));
        }
        if (accept("exec")) {
            const SourceSpan at = peek().span;
            auto [lo, hi] = parse_time_interval("E202");
            if (hi < lo) {
                error("E202", "execution time needs bcet <= wcet", at);
            }
            tc.exec = ExecTime{lo, hi};
        }
        tc.span = join(start.span, expect(";").span);
        return tc;
    }

    CauseEffectChain chain(const Token& start) {
        CauseEffectChain c;
        c.name = std::string(expect_ident("chain name").text);
        expect("=");
        c.stages.push_back(endpoint());
        while (accept("->")) {
            c.stages.push_back(endpoint());
        }
        if (accept("expect")) {
            const SourceSpan at = peek().span;
            auto [lo, hi] = parse_time_interval("E202");
            if (hi < lo) {
                error("E202", "latency spec needs min <= max", at);
            }
            c.spec = E2ELatencySpec{lo, hi};
        }
        c.span = join(start.span, expect(";").span);
        if (c.stages.size() < 2) {
            error("E201", "chain '" + c.name + "' needs at least two out-port stages", c.span);
        }
        return c;
    }
};

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

std::string frequency(Hertz f) { return format_number(f.value) + " Hz"; }

std::string seconds(Duration d) { return format_duration(d, TimeUnit::Seconds) + " s"; }

std::string millis(Duration d) { return format_duration(d, TimeUnit::Millis) + " ms"; }

}  // namespace

ParseResult<ComponentDefinition> parse_component_definition(std::string_view text, std::string_view file) {
    return ComponentParser(text, file).run();
}

ParseResult<SystemConfiguration> parse_system_configuration(std::string_view text, std::string_view file) {
    return SystemParser(text, file).run();
}

std::string pretty_print(const ComponentDefinition& c) {
    std::ostringstream out;
    out << "component " << c.name << " {\n";
    for (const auto& p : c.in_ports) {
        out << "    inport " << p.name << " : " << p.message_type << ";\n";
    }
    for (const auto& p : c.out_ports) {
        out << "    outport " << p.name << " : " << p.message_type << ";\n";
    }
    for (const auto& cp : c.compounds) {
        out << "    compound " << cp.name << " = " << to_string(cp.combination) << "(";
        for (std::size_t i = 0; i < cp.members.size(); ++i) {
            out << (i == 0 ? "" : ", ") << cp.members[i].name;
        }
        out << ");\n";
    }
    for (const auto& t : c.tasks) {
        out << "    " << to_string(t.kind) << " task " << t.name << " {\n";
        for (const auto& r : t.reads) {
            out << "        reads " << r.port << (r.dependency == Dependency::Optional ? " optional" : "") << ";\n";
        }
        for (const auto& w : t.writes) {
            out << "        writes " << w.name << ";\n";
        }
        if (t.constraint) {
            out << "        activation [" << frequency(t.constraint->min_freq) << ", "
                << frequency(t.constraint->max_freq) << "]" << (t.constraint->changeable ? "" : " fixed") << ";\n";
        }
        out << "    }\n";
    }
    out << "}\n";
    return out.str();
}

std::string pretty_print(const SystemConfiguration& s) {
    std::ostringstream out;
    out << "system " << s.name << " {\n";
    for (const auto& inst : s.instances) {
        out << "    instance " << inst.name << " : " << inst.component.name << " {\n";
        for (const auto& tc : inst.tasks) {
            out << "        task " << tc.task << " ";
            if (const auto* dt = std::get_if<DataTriggered>(&tc.source)) {
                out << "datatriggered " << dt->port;
                if (dt->prescaler != 1) {
                    out << " / " << dt->prescaler;
                }
            } else if (const auto* pt = std::get_if<PeriodicTimer>(&tc.source)) {
                out << "periodic " << frequency(pt->frequency);
            } else {
                const auto& sp = std::get<Sporadic>(tc.source);
                out << "sporadic";
                if (sp.min_interarrival && sp.max_interarrival) {
                    out << " [" << seconds(*sp.min_interarrival) << ", " << seconds(*sp.max_interarrival) << "]";
                }
            }
            if (tc.exec) {
                out << " exec [" << seconds(tc.exec->bcet) << ", " << seconds(tc.exec->wcet) << "]";
            }
            out << ";\n";
        }
        out << "    }\n";
    }
    for (const auto& c : s.connections) {
        out << "    connect " << c.from.instance << "." << c.from.port << " -> " << c.to.instance << "." << c.to.port;
        if (c.delay != Duration{0}) {
            out << " delay " << seconds(c.delay);
        }
        out << ";\n";
    }
    for (const auto& ch : s.chains) {
        out << "    chain " << ch.name << " =";
        for (std::size_t i = 0; i < ch.stages.size(); ++i) {
            out << (i == 0 ? " " : " -> ") << ch.stages[i].instance << "." << ch.stages[i].port;
        }
        if (ch.spec) {
            out << " expect [" << millis(ch.spec->min_latency) << ", " << millis(ch.spec->max_latency) << "]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace cechain::dsl
