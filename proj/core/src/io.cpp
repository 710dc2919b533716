/*
 * Copyright 2026 the rsg authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rsg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace rsg {

std::string format_diagnostic(const ParseDiagnostic& diagnostic)
{
    std::ostringstream out;
    out << diagnostic.line << ':' << diagnostic.column << ": "
        << (diagnostic.severity == Severity::Error ? "error" : "warning")
        << ": " << diagnostic.message;
    return out.str();
}

namespace {

struct Token
{
    std::string text;
    int line = 0;
    int column = 0;
};

struct Line
{
    int number = 0;
    std::vector<Token> tokens;
};

/// Splits into lines of whitespace-separated tokens; '#' starts a comment.
std::vector<Line> tokenize(std::string_view text, bool hash_comments = true)
{
    std::vector<Line> lines;
    int line_number = 1;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = text.find('\n', pos);
        std::string_view raw =
            text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                           : end - pos);
        Line line;
        line.number = line_number;
        std::size_t i = 0;
        while (i < raw.size()) {
            const char c = raw[i];
            if (hash_comments && c == '#')
                break;
            if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
                ++i;
                continue;
            }
            const std::size_t start = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' &&
                   raw[i] != '\r' && raw[i] != '\v' && raw[i] != '\f' &&
                   !(hash_comments && raw[i] == '#'))
                ++i;
            line.tokens.push_back(Token{std::string(raw.substr(start, i - start)),
                                        line_number,
                                        static_cast<int>(start) + 1});
        }
        if (!line.tokens.empty())
            lines.push_back(std::move(line));
        if (end == std::string_view::npos)
            break;
        pos = end + 1;
        ++line_number;
    }
    return lines;
}

class DiagnosticSink
{
public:
    void error(const Token& token, std::string message)
    {
        diagnostics_.push_back(
            {token.line, token.column, Severity::Error, std::move(message)});
    }
    void error(int line, int column, std::string message)
    {
        diagnostics_.push_back({line, column, Severity::Error, std::move(message)});
    }
    void warning(int line, int column, std::string message)
    {
        diagnostics_.push_back(
            {line, column, Severity::Warning, std::move(message)});
    }

    bool failed() const
    {
        return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                           [](const ParseDiagnostic& d) {
                               return d.severity == Severity::Error;
                           });
    }

    std::vector<ParseDiagnostic> take() { return std::move(diagnostics_); }

private:
    std::vector<ParseDiagnostic> diagnostics_;
};

bool valid_name(const std::string& name)
{
    if (name.empty())
        return false;
    for (char ch : name) {
        const bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == '.';
        if (!ok)
            return false;
    }
    return true;
}

std::optional<long long> parse_int(const Token& token, DiagnosticSink& sink)
{
    long long value = 0;
    const char* begin = token.text.data();
    const char* end = begin + token.text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        sink.error(token, "expected an integer, got '" + token.text + "'");
        return std::nullopt;
    }
    return value;
}

std::optional<FlowCount> parse_bigint(const Token& token, DiagnosticSink& sink)
{
    const std::string& s = token.text;
    std::size_t digits_from = s.size() > 0 && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() == digits_from) {
        sink.error(token, "expected an integer, got '" + s + "'");
        return std::nullopt;
    }
    for (std::size_t i = digits_from; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            sink.error(token, "expected an integer, got '" + s + "'");
            return std::nullopt;
        }
    }
    return FlowCount(s);
}

} // namespace

ParseResult<Game> parse_game(std::string_view text)
{
    ParseResult<Game> result;
    DiagnosticSink sink;
    const std::vector<Line> lines = tokenize(text);

    // pass 1: vertex declarations fix the index order
    GameBuilder builder;
    std::unordered_map<std::string, VertexId> ids;
    for (const Line& line : lines) {
        if (line.tokens[0].text != "vertex")
            continue;
        if (line.tokens.size() != 3) {
            sink.error(line.tokens[0], "vertex line needs a name and an owner");
            continue;
        }
        const std::string& name = line.tokens[1].text;
        const std::string& owner_text = line.tokens[2].text;
        if (!valid_name(name)) {
            sink.error(line.tokens[1],
                       "invalid vertex name '" + name +
                           "' (allowed: letters, digits, '_', '.')");
            continue;
        }
        Owner owner;
        if (owner_text == "R")
            owner = Owner::Reach;
        else if (owner_text == "S")
            owner = Owner::Safety;
        else if (owner_text == "W")
            owner = Owner::Switch;
        else {
            sink.error(line.tokens[2],
                       "owner must be R, S or W, got '" + owner_text + "'");
            continue;
        }
        if (ids.count(name)) {
            sink.error(line.tokens[1], "vertex '" + name + "' redeclared");
            continue;
        }
        ids.emplace(name, builder.add_vertex(name, owner));
    }

    auto lookup = [&](const Token& token) -> std::optional<VertexId> {
        auto it = ids.find(token.text);
        if (it == ids.end()) {
            sink.error(token, "unknown vertex '" + token.text + "'");
            return std::nullopt;
        }
        return it->second;
    };

    // pass 2: edges and designated vertices
    std::optional<VertexId> start, target;
    std::vector<bool> defined(builder.num_vertices(), false);
    std::vector<Owner> owners;
    {
        Game probe = builder.build();
        for (VertexId v = 0; v < probe.num_vertices(); ++v)
            owners.push_back(probe.owner(v));
    }

    for (const Line& line : lines) {
        const std::string& keyword = line.tokens[0].text;
        if (keyword == "vertex")
            continue;
        if (keyword == "succ" || keyword == "order") {
            if (line.tokens.size() < 3) {
                sink.error(line.tokens[0],
                           keyword + " line needs a vertex and at least one successor");
                continue;
            }
            const std::optional<VertexId> v = lookup(line.tokens[1]);
            if (!v)
                continue;
            const bool is_switch = owners[*v] == Owner::Switch;
            if (keyword == "succ" && is_switch) {
                sink.error(line.tokens[0],
                           "vertex '" + line.tokens[1].text +
                               "' is a switch vertex; use 'order'");
                continue;
            }
            if (keyword == "order" && !is_switch) {
                sink.error(line.tokens[0],
                           "vertex '" + line.tokens[1].text +
                               "' is a player vertex; use 'succ'");
                continue;
            }
            if (defined[*v]) {
                sink.error(line.tokens[0], "successors of '" +
                                               line.tokens[1].text +
                                               "' redefined");
                continue;
            }
            std::vector<VertexId> successors;
            bool ok = true;
            for (std::size_t i = 2; i < line.tokens.size(); ++i) {
                const std::optional<VertexId> u = lookup(line.tokens[i]);
                if (!u) {
                    ok = false;
                    continue;
                }
                successors.push_back(*u);
            }
            if (ok) {
                defined[*v] = true;
                builder.set_successors(*v, std::move(successors));
            }
        } else if (keyword == "start" || keyword == "target") {
            if (line.tokens.size() != 2) {
                sink.error(line.tokens[0], keyword + " line needs one vertex");
                continue;
            }
            const std::optional<VertexId> v = lookup(line.tokens[1]);
            if (!v)
                continue;
            std::optional<VertexId>& slot = keyword == "start" ? start : target;
            if (slot) {
                sink.error(line.tokens[0], keyword + " redefined");
                continue;
            }
            slot = v;
        } else {
            sink.error(line.tokens[0], "unknown keyword '" + keyword + "'");
        }
    }

    if (!start)
        sink.error(1, 1, "missing start line");
    if (!target)
        sink.error(1, 1, "missing target line");

    result.diagnostics = sink.take();
    if (std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                    [](const ParseDiagnostic& d) {
                        return d.severity == Severity::Error;
                    }))
        return result;

    builder.set_start(*start);
    builder.set_target(*target);
    result.value = builder.build();
    return result;
}

std::string serialize_game(const Game& game)
{
    std::ostringstream out;
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        const char* owner = game.owner(v) == Owner::Reach    ? "R"
                            : game.owner(v) == Owner::Safety ? "S"
                                                             : "W";
        out << "vertex " << game.name(v) << ' ' << owner << '\n';
        if (!game.out(v).empty()) {
            out << (game.owner(v) == Owner::Switch ? "order" : "succ") << ' '
                << game.name(v);
            for (VertexId u : game.out(v))
                out << ' ' << game.name(u);
            out << '\n';
        }
    }
    out << "start " << game.name(game.start()) << '\n';
    out << "target " << game.name(game.target()) << '\n';
    return out.str();
}

std::string export_dot(const Game& game, const DotAnnotations& annotations)
{
    // chosen (vertex, successor) pairs for strategy highlighting
    std::unordered_set<std::uint64_t> chosen;
    auto mark = [&chosen](VertexId v, VertexId u) {
        chosen.insert((static_cast<std::uint64_t>(v) << 32) | u);
    };
    if (annotations.positional)
        for (const auto& [v, u] : annotations.positional->moves)
            mark(v, u);
    if (annotations.config)
        for (const auto& [state, u] : annotations.config->moves)
            mark(state.vertex, u);

    std::ostringstream out;
    out << "digraph game {\n  rankdir=LR;\n";
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        const char* shape = game.owner(v) == Owner::Reach    ? "box"
                            : game.owner(v) == Owner::Safety ? "triangle"
                                                             : "circle";
        out << "  n" << v << " [label=\"" << game.name(v) << "\",shape="
            << shape;
        if (v == game.target())
            out << ",peripheries=2";
        out << "];\n";
    }
    out << "  entry [shape=point,label=\"\"];\n";
    out << "  entry -> n" << game.start() << ";\n";

    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) == Owner::Switch) {
            // collapse repeated targets into one edge listing its positions
            std::vector<std::pair<VertexId, std::vector<std::size_t>>> grouped;
            const auto& order = game.out(v);
            for (std::size_t j = 0; j < order.size(); ++j) {
                auto it = std::find_if(grouped.begin(), grouped.end(),
                                       [&](const auto& g) {
                                           return g.first == order[j];
                                       });
                if (it == grouped.end())
                    grouped.push_back({order[j], {j + 1}});
                else
                    it->second.push_back(j + 1);
            }
            for (const auto& [u, positions] : grouped) {
                out << "  n" << v << " -> n" << u << " [label=\"";
                for (std::size_t i = 0; i < positions.size(); ++i)
                    out << (i ? "," : "") << positions[i];
                if (annotations.flow &&
                    annotations.flow->shape_matches(game)) {
                    FlowCount f = 0;
                    const FlowCount& t = annotations.flow->throughput(
                        static_cast<std::size_t>(game.switch_slot(v)));
                    for (std::size_t p : positions)
                        f += switch_position_flow(t, order.size(), p - 1);
                    out << " f=" << f.str();
                }
                out << "\"";
                if (chosen.count((static_cast<std::uint64_t>(v) << 32) | u))
                    out << ",penwidth=2";
                out << "];\n";
            }
        } else {
            const auto& succ = game.out(v);
            for (std::size_t j = 0; j < succ.size(); ++j) {
                out << "  n" << v << " -> n" << succ[j];
                const bool bold =
                    chosen.count((static_cast<std::uint64_t>(v) << 32) | succ[j]) > 0;
                std::string label;
                if (annotations.flow && annotations.flow->shape_matches(game) &&
                    game.owner(v) == Owner::Reach)
                    label = "f=" + annotations.flow->reach(v, j).str();
                if (!label.empty() || bold) {
                    out << " [";
                    if (!label.empty())
                        out << "label=\"" << label << "\"" << (bold ? "," : "");
                    if (bold)
                        out << "penwidth=2";
                    out << "]";
                }
                out << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

namespace {

/// Shared DIMACS scaffolding: problem line, quantifier blocks (QDIMACS
/// only), then 0-terminated clauses.
struct DimacsData
{
    int num_vars = 0;
    int num_clauses_declared = 0;
    std::vector<std::pair<Quantifier, int>> prefix;
    std::vector<std::vector<int>> clauses;
};

std::optional<DimacsData> parse_dimacs_impl(std::string_view text,
                                            bool qdimacs, DiagnosticSink& sink)
{
    DimacsData data;
    const std::vector<Line> lines = tokenize(text, /*hash_comments=*/false);

    bool saw_problem = false;
    bool in_clauses = false;
    std::vector<int> current;
    bool stopped = false;

    for (const Line& line : lines) {
        if (stopped)
            break;
        const Token& head = line.tokens[0];
        if (head.text == "c" || head.text.starts_with("c"))
            continue; // comment line
        if (head.text == "%") {
            stopped = true; // SATLIB end marker
            continue;
        }
        if (head.text == "p") {
            if (saw_problem) {
                sink.error(head, "duplicate problem line");
                continue;
            }
            if (line.tokens.size() != 4 || line.tokens[1].text != "cnf") {
                sink.error(head, "expected 'p cnf <vars> <clauses>'");
                continue;
            }
            const auto vars = parse_int(line.tokens[2], sink);
            const auto clauses = parse_int(line.tokens[3], sink);
            if (!vars || !clauses)
                continue;
            if (*vars < 0 || *clauses < 0) {
                sink.error(head, "negative counts in problem line");
                continue;
            }
            data.num_vars = static_cast<int>(*vars);
            data.num_clauses_declared = static_cast<int>(*clauses);
            saw_problem = true;
            continue;
        }
        if (!saw_problem) {
            sink.error(head, "expected the problem line before any data");
            return std::nullopt;
        }
        if (qdimacs && (head.text == "e" || head.text == "a")) {
            if (in_clauses) {
                sink.error(head,
                           "quantifier line after the first clause");
                continue;
            }
            const Quantifier q = head.text == "e" ? Quantifier::Exists
                                                  : Quantifier::ForAll;
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                const auto value = parse_int(line.tokens[i], sink);
                if (!value)
                    continue;
                if (*value == 0) {
                    if (i + 1 != line.tokens.size())
                        sink.error(line.tokens[i],
                                   "tokens after the quantifier terminator");
                    break;
                }
                if (*value < 0 || *value > data.num_vars) {
                    sink.error(line.tokens[i],
                               "quantified variable out of range");
                    continue;
                }
                data.prefix.emplace_back(q, static_cast<int>(*value));
            }
            continue;
        }
        // clause literals, 0-terminated, may span lines
        in_clauses = true;
        for (const Token& token : line.tokens) {
            if (token.text == "%") {
                stopped = true;
                break;
            }
            const auto value = parse_int(token, sink);
            if (!value)
                continue;
            if (*value == 0) {
                data.clauses.push_back(current);
                current.clear();
                continue;
            }
            if (std::abs(*value) > data.num_vars) {
                sink.error(token, "literal " + token.text +
                                      " out of range (max " +
                                      std::to_string(data.num_vars) + ")");
                continue;
            }
            current.push_back(static_cast<int>(*value));
        }
    }

    if (!saw_problem) {
        sink.error(1, 1, "missing problem line");
        return std::nullopt;
    }
    if (!current.empty()) {
        sink.error(1, 1, "unterminated final clause (missing 0)");
        return std::nullopt;
    }
    if (static_cast<int>(data.clauses.size()) != data.num_clauses_declared)
        sink.warning(1, 1,
                     "problem line declares " +
                         std::to_string(data.num_clauses_declared) +
                         " clauses but " + std::to_string(data.clauses.size()) +
                         " were found");
    return data;
}

} // namespace

ParseResult<CnfFormula> parse_dimacs_cnf(std::string_view text)
{
    ParseResult<CnfFormula> result;
    DiagnosticSink sink;
    const auto data = parse_dimacs_impl(text, /*qdimacs=*/false, sink);
    result.diagnostics = sink.take();
    if (!data || std::any_of(result.diagnostics.begin(),
                             result.diagnostics.end(),
                             [](const ParseDiagnostic& d) {
                                 return d.severity == Severity::Error;
                             }))
        return result;
    result.value = CnfFormula{data->num_vars, data->clauses};
    return result;
}

std::string serialize_dimacs_cnf(const CnfFormula& formula)
{
    std::ostringstream out;
    out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size()
        << '\n';
    for (const auto& clause : formula.clauses) {
        for (int literal : clause)
            out << literal << ' ';
        out << "0\n";
    }
    return out.str();
}

ParseResult<QbfFormula> parse_qdimacs(std::string_view text)
{
    ParseResult<QbfFormula> result;
    DiagnosticSink sink;
    const auto data = parse_dimacs_impl(text, /*qdimacs=*/true, sink);
    if (data) {
        std::vector<bool> quantified(static_cast<std::size_t>(data->num_vars) + 1,
                                     false);
        for (const auto& [q, var] : data->prefix) {
            (void)q;
            if (quantified[static_cast<std::size_t>(var)])
                sink.error(1, 1,
                           "variable " + std::to_string(var) +
                               " quantified twice");
            quantified[static_cast<std::size_t>(var)] = true;
        }
        for (const auto& clause : data->clauses)
            for (int literal : clause)
                if (!quantified[static_cast<std::size_t>(std::abs(literal))])
                    sink.error(1, 1,
                               "free variable " +
                                   std::to_string(std::abs(literal)) +
                                   " (all matrix variables must be quantified)");
    }
    result.diagnostics = sink.take();
    if (!data || std::any_of(result.diagnostics.begin(),
                             result.diagnostics.end(),
                             [](const ParseDiagnostic& d) {
                                 return d.severity == Severity::Error;
                             }))
        return result;

    QbfFormula formula;
    formula.prefix = data->prefix;
    std::vector<QbfNode> disjunctions;
    for (const auto& clause : data->clauses) {
        std::vector<QbfNode> literals;
        for (int literal : clause)
            literals.push_back(QbfNode::lit(literal));
        disjunctions.push_back(QbfNode::disj(std::move(literals)));
    }
    formula.matrix = QbfNode::conj(std::move(disjunctions));
    result.value = std::move(formula);
    return result;
}

std::string serialize_qdimacs(const QbfFormula& formula)
{
    if (formula.matrix.kind != QbfNode::Kind::And)
        throw Error(ErrorKind::InvalidArgument,
                    "serialize_qdimacs expects an And-of-Or matrix");
    int num_vars = 0;
    for (const auto& [q, var] : formula.prefix) {
        (void)q;
        num_vars = std::max(num_vars, var);
    }
    std::ostringstream out;
    out << "p cnf " << num_vars << ' ' << formula.matrix.children.size()
        << '\n';
    std::size_t i = 0;
    while (i < formula.prefix.size()) {
        const Quantifier q = formula.prefix[i].first;
        out << (q == Quantifier::Exists ? 'e' : 'a');
        while (i < formula.prefix.size() && formula.prefix[i].first == q)
            out << ' ' << formula.prefix[i++].second;
        out << " 0\n";
    }
    for (const QbfNode& clause : formula.matrix.children) {
        if (clause.kind != QbfNode::Kind::Or)
            throw Error(ErrorKind::InvalidArgument,
                        "serialize_qdimacs expects an And-of-Or matrix");
        for (const QbfNode& literal : clause.children)
            out << literal.literal << ' ';
        out << "0\n";
    }
    return out.str();
}

ParseResult<Digraph> parse_digraph(std::string_view text)
{
    ParseResult<Digraph> result;
    DiagnosticSink sink;
    const std::vector<Line> lines = tokenize(text);

    Digraph graph;
    bool saw_header = false;
    int edges_expected = 0;
    for (const Line& line : lines) {
        if (!saw_header) {
            if (line.tokens.size() != 4) {
                sink.error(line.tokens[0], "expected header 'n m s t'");
                break;
            }
            const auto n = parse_int(line.tokens[0], sink);
            const auto m = parse_int(line.tokens[1], sink);
            const auto s = parse_int(line.tokens[2], sink);
            const auto t = parse_int(line.tokens[3], sink);
            if (!n || !m || !s || !t)
                break;
            if (*n < 1 || *m < 0) {
                sink.error(line.tokens[0], "invalid vertex or edge count");
                break;
            }
            graph.num_vertices = static_cast<int>(*n);
            graph.s = static_cast<int>(*s);
            graph.t = static_cast<int>(*t);
            edges_expected = static_cast<int>(*m);
            if (graph.s < 0 || graph.s >= graph.num_vertices)
                sink.error(line.tokens[2], "s out of range");
            if (graph.t < 0 || graph.t >= graph.num_vertices)
                sink.error(line.tokens[3], "t out of range");
            saw_header = true;
            continue;
        }
        if (line.tokens.size() != 2) {
            sink.error(line.tokens[0], "expected edge line 'u v'");
            continue;
        }
        const auto u = parse_int(line.tokens[0], sink);
        const auto v = parse_int(line.tokens[1], sink);
        if (!u || !v)
            continue;
        if (*u < 0 || *u >= graph.num_vertices || *v < 0 ||
            *v >= graph.num_vertices) {
            sink.error(line.tokens[0], "edge endpoint out of range");
            continue;
        }
        graph.edges.emplace_back(static_cast<int>(*u), static_cast<int>(*v));
    }

    if (!saw_header)
        sink.error(1, 1, "missing header line 'n m s t'");
    else if (static_cast<int>(graph.edges.size()) != edges_expected)
        sink.warning(1, 1,
                     "header declares " + std::to_string(edges_expected) +
                         " edges but " + std::to_string(graph.edges.size()) +
                         " were found");

    result.diagnostics = sink.take();
    if (std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                    [](const ParseDiagnostic& d) {
                        return d.severity == Severity::Error;
                    }))
        return result;
    result.value = std::move(graph);
    return result;
}

std::string serialize_digraph(const Digraph& graph)
{
    std::ostringstream out;
    out << graph.num_vertices << ' ' << graph.edges.size() << ' ' << graph.s
        << ' ' << graph.t << '\n';
    for (const auto& [u, v] : graph.edges)
        out << u << ' ' << v << '\n';
    return out.str();
}

ParseResult<ControlledSwitchingFlow> parse_flow(std::string_view text,
                                                const Game& game)
{
    ParseResult<ControlledSwitchingFlow> result;
    DiagnosticSink sink;
    ControlledSwitchingFlow flow(game);

    std::unordered_set<std::uint64_t> seen;
    for (const Line& line : tokenize(text)) {
        const Token& head = line.tokens[0];
        if (head.text == "switch") {
            if (line.tokens.size() != 3) {
                sink.error(head, "expected 'switch <vertex> <throughput>'");
                continue;
            }
            const auto v = game.find(line.tokens[1].text);
            if (!v) {
                sink.error(line.tokens[1],
                           "unknown vertex '" + line.tokens[1].text + "'");
                continue;
            }
            if (game.owner(*v) != Owner::Switch) {
                sink.error(line.tokens[1], "vertex '" + line.tokens[1].text +
                                               "' is not a switch vertex");
                continue;
            }
            const auto count = parse_bigint(line.tokens[2], sink);
            if (!count)
                continue;
            const std::uint64_t key = static_cast<std::uint64_t>(*v) << 32 |
                                      0xffffffffULL;
            if (!seen.insert(key).second) {
                sink.error(line.tokens[1], "throughput of '" +
                                               line.tokens[1].text +
                                               "' redefined");
                continue;
            }
            flow.set_throughput(static_cast<std::size_t>(game.switch_slot(*v)),
                                *count);
        } else if (head.text == "reach") {
            if (line.tokens.size() != 4) {
                sink.error(head,
                           "expected 'reach <vertex> <successor> <count>'");
                continue;
            }
            const auto v = game.find(line.tokens[1].text);
            if (!v) {
                sink.error(line.tokens[1],
                           "unknown vertex '" + line.tokens[1].text + "'");
                continue;
            }
            if (game.owner(*v) != Owner::Reach) {
                sink.error(line.tokens[1], "vertex '" + line.tokens[1].text +
                                               "' is not a reach vertex");
                continue;
            }
            const auto u = game.find(line.tokens[2].text);
            if (!u) {
                sink.error(line.tokens[2],
                           "unknown vertex '" + line.tokens[2].text + "'");
                continue;
            }
            const auto& succ = game.out(*v);
            const auto it = std::find(succ.begin(), succ.end(), *u);
            if (it == succ.end()) {
                sink.error(line.tokens[2], "'" + line.tokens[2].text +
                                               "' is not a successor of '" +
                                               line.tokens[1].text + "'");
                continue;
            }
            const auto count = parse_bigint(line.tokens[3], sink);
            if (!count)
                continue;
            const std::uint64_t key = static_cast<std::uint64_t>(*v) << 32 |
                                      static_cast<std::uint64_t>(*u);
            if (!seen.insert(key).second) {
                sink.error(line.tokens[1],
                           "flow on edge " + line.tokens[1].text + " -> " +
                               line.tokens[2].text + " redefined");
                continue;
            }
            flow.set_reach(*v, static_cast<std::size_t>(it - succ.begin()),
                           *count);
        } else {
            sink.error(head, "unknown keyword '" + head.text + "'");
        }
    }

    result.diagnostics = sink.take();
    if (std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                    [](const ParseDiagnostic& d) {
                        return d.severity == Severity::Error;
                    }))
        return result;
    result.value = std::move(flow);
    return result;
}

std::string serialize_flow(const Game& game, const ControlledSwitchingFlow& flow)
{
    std::ostringstream out;
    for (std::size_t slot = 0; slot < game.num_switch_vertices(); ++slot) {
        if (flow.throughput(slot) != 0)
            out << "switch " << game.name(game.switch_vertex(slot)) << ' '
                << flow.throughput(slot).str() << '\n';
    }
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) != Owner::Reach)
            continue;
        const auto& succ = game.out(v);
        for (std::size_t j = 0; j < succ.size(); ++j) {
            if (flow.reach(v, j) != 0)
                out << "reach " << game.name(v) << ' ' << game.name(succ[j])
                    << ' ' << flow.reach(v, j).str() << '\n';
        }
    }
    return out.str();
}

namespace {

std::string counter_vector_text(const CounterMap& counters)
{
    if (counters.size() == 0)
        return "-";
    std::string text;
    for (std::size_t i = 0; i < counters.size(); ++i) {
        if (i)
            text += ',';
        text += std::to_string(counters[i]);
    }
    return text;
}

} // namespace

ParseResult<ParsedStrategy> parse_strategy(std::string_view text,
                                           const Game& game)
{
    ParseResult<ParsedStrategy> result;
    DiagnosticSink sink;

    std::optional<Player> declared;
    std::optional<bool> positional; // set by the first move line
    SwitchConfigStrategy config;
    PositionalStrategy pos;

    std::optional<Owner> moved_owner;

    for (const Line& line : tokenize(text)) {
        const Token& head = line.tokens[0];
        if (head.text == "player") {
            if (line.tokens.size() != 2) {
                sink.error(head, "expected 'player reachability|safety'");
                continue;
            }
            if (declared) {
                sink.error(head, "player redefined");
                continue;
            }
            if (line.tokens[1].text == "reachability")
                declared = Player::Reachability;
            else if (line.tokens[1].text == "safety")
                declared = Player::Safety;
            else
                sink.error(line.tokens[1],
                           "player must be 'reachability' or 'safety'");
            continue;
        }
        if (head.text != "move") {
            sink.error(head, "unknown keyword '" + head.text + "'");
            continue;
        }
        if (line.tokens.size() != 4) {
            sink.error(head, "expected 'move <vertex> <counters> <successor>'");
            continue;
        }
        const auto v = game.find(line.tokens[1].text);
        if (!v) {
            sink.error(line.tokens[1],
                       "unknown vertex '" + line.tokens[1].text + "'");
            continue;
        }
        if (game.owner(*v) == Owner::Switch) {
            sink.error(line.tokens[1], "vertex '" + line.tokens[1].text +
                                           "' is a switch vertex and has no "
                                           "strategy moves");
            continue;
        }
        const auto u = game.find(line.tokens[3].text);
        if (!u) {
            sink.error(line.tokens[3],
                       "unknown vertex '" + line.tokens[3].text + "'");
            continue;
        }
        const auto& succ = game.out(*v);
        if (std::find(succ.begin(), succ.end(), *u) == succ.end()) {
            sink.error(line.tokens[3], "'" + line.tokens[3].text +
                                           "' is not a successor of '" +
                                           line.tokens[1].text + "'");
            continue;
        }
        if (moved_owner && *moved_owner != game.owner(*v)) {
            sink.error(line.tokens[1],
                       "strategy mixes vertices of both players");
            continue;
        }
        moved_owner = game.owner(*v);

        const std::string& counters_text = line.tokens[2].text;
        const bool is_positional = counters_text == "*";
        if (positional && *positional != is_positional) {
            sink.error(line.tokens[2],
                       "strategy mixes positional and counter-vector moves");
            continue;
        }
        positional = is_positional;

        if (is_positional) {
            if (!pos.moves.emplace(*v, *u).second)
                sink.error(line.tokens[1], "move at '" + line.tokens[1].text +
                                               "' redefined");
            continue;
        }

        CounterMap counters(game.num_switch_vertices());
        bool ok = true;
        if (counters_text == "-") {
            if (game.num_switch_vertices() != 0) {
                sink.error(line.tokens[2],
                           "'-' counter vector in a game with switch vertices");
                ok = false;
            }
        } else {
            std::vector<std::uint32_t> values;
            std::size_t pos_in = 0;
            while (pos_in <= counters_text.size()) {
                const std::size_t comma = counters_text.find(',', pos_in);
                const std::string part = counters_text.substr(
                    pos_in, comma == std::string::npos ? std::string::npos
                                                       : comma - pos_in);
                unsigned long long value = 0;
                const char* begin = part.data();
                const char* end = begin + part.size();
                auto [ptr, ec] = std::from_chars(begin, end, value);
                if (part.empty() || ec != std::errc() || ptr != end) {
                    sink.error(line.tokens[2],
                               "bad counter vector '" + counters_text + "'");
                    ok = false;
                    break;
                }
                values.push_back(static_cast<std::uint32_t>(value));
                if (comma == std::string::npos)
                    break;
                pos_in = comma + 1;
            }
            if (ok && values.size() != game.num_switch_vertices()) {
                sink.error(line.tokens[2],
                           "counter vector has " +
                               std::to_string(values.size()) +
                               " entries, expected " +
                               std::to_string(game.num_switch_vertices()));
                ok = false;
            }
            if (ok) {
                for (std::size_t slot = 0; slot < values.size(); ++slot) {
                    const std::size_t k =
                        game.out(game.switch_vertex(slot)).size();
                    if (values[slot] >= k) {
                        sink.error(line.tokens[2],
                                   "counter " + std::to_string(values[slot]) +
                                       " out of range for switch vertex '" +
                                       game.name(game.switch_vertex(slot)) +
                                       "'");
                        ok = false;
                        break;
                    }
                    counters[slot] = values[slot];
                }
            }
        }
        if (!ok)
            continue;
        const GameState key{*v, counters};
        if (!config.moves.emplace(key, *u).second)
            sink.error(line.tokens[1],
                       "move at '" + line.tokens[1].text + "' [" +
                           counters_text + "] redefined");
    }

    // resolve the player: declaration wins, otherwise infer from the moves
    std::optional<Player> player = declared;
    if (moved_owner) {
        const Player inferred = *moved_owner == Owner::Reach
                                    ? Player::Reachability
                                    : Player::Safety;
        if (player && *player != inferred)
            sink.error(1, 1,
                       "player line contradicts the owners of the moved "
                       "vertices");
        player = inferred;
    }
    if (!player)
        sink.error(1, 1,
                   "cannot determine the player: add a 'player' line");

    result.diagnostics = sink.take();
    if (std::any_of(result.diagnostics.begin(), result.diagnostics.end(),
                    [](const ParseDiagnostic& d) {
                        return d.severity == Severity::Error;
                    }))
        return result;

    if (positional.value_or(false)) {
        pos.player = *player;
        result.value = std::move(pos);
    } else {
        config.player = *player;
        result.value = std::move(config);
    }
    return result;
}

std::string serialize_strategy(const Game& game,
                               const SwitchConfigStrategy& strategy)
{
    std::vector<std::pair<GameState, VertexId>> moves(strategy.moves.begin(),
                                                      strategy.moves.end());
    std::sort(moves.begin(), moves.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::ostringstream out;
    out << "player " << to_string(strategy.player) << '\n';
    for (const auto& [state, u] : moves)
        out << "move " << game.name(state.vertex) << ' '
            << counter_vector_text(state.counters) << ' ' << game.name(u)
            << '\n';
    return out.str();
}

std::string serialize_strategy(const Game& game,
                               const PositionalStrategy& strategy)
{
    std::ostringstream out;
    out << "player " << to_string(strategy.player) << '\n';
    for (const auto& [v, u] : strategy.moves)
        out << "move " << game.name(v) << " * " << game.name(u) << '\n';
    return out.str();
}

} // namespace rsg
