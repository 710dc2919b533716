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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsg/flow.hpp"
#include "rsg/game.hpp"
#include "rsg/reductions.hpp"
#include "rsg/twoplayer.hpp"

namespace rsg {

enum class Severity { Error, Warning };

struct ParseDiagnostic
{
    int line = 0;   // 1-based
    int column = 0; // 1-based
    Severity severity = Severity::Error;
    std::string message;
};

std::string format_diagnostic(const ParseDiagnostic& diagnostic);

/// Parse outcome: a value unless any Error-severity diagnostic was
/// produced. Warnings may accompany a successful parse.
template <typename T>
struct ParseResult
{
    std::optional<T> value;
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return value.has_value(); }
};

/*
 * Native game format, line-based, '#' starts a comment, names match
 * [A-Za-z0-9_.]+:
 *
 *   vertex <name> R|S|W
 *   succ <name> <name>...     (player vertices)
 *   order <name> <name>...    (switch vertices; repetition allowed)
 *   start <name>
 *   target <name>
 *
 * Lines may reference vertices declared later. Successor lists are
 * order-significant. serialize_game emits the canonical form: one vertex
 * line per vertex in index order, each followed by its succ/order line,
 * then start and target.
 */
ParseResult<Game> parse_game(std::string_view text);
std::string serialize_game(const Game& game);

/// Optional overlays for export_dot.
struct DotAnnotations
{
    const ControlledSwitchingFlow* flow = nullptr;
    const PositionalStrategy* positional = nullptr;
    const SwitchConfigStrategy* config = nullptr;
};

/**
 * Graphviz export: reach vertices are boxes, safety vertices triangles,
 * switch vertices circles. Switch edges carry their 1-based order
 * positions as labels (repeated targets are collapsed into one edge with a
 * position list). A flow annotation adds per-edge counts; a strategy
 * annotation bolds chosen edges.
 */
std::string export_dot(const Game& game, const DotAnnotations& annotations = {});

/// Standard DIMACS CNF ("p cnf <vars> <clauses>", 0-terminated clauses).
ParseResult<CnfFormula> parse_dimacs_cnf(std::string_view text);
std::string serialize_dimacs_cnf(const CnfFormula& formula);

/**
 * QDIMACS: quantifier lines "e ... 0" / "a ... 0" after the problem line,
 * then CNF clauses. Free variables are rejected; the matrix becomes an And
 * over Or nodes over literals.
 */
ParseResult<QbfFormula> parse_qdimacs(std::string_view text);
std::string serialize_qdimacs(const QbfFormula& formula);

/// Digraph: first line "n m s t", then m lines "u v".
ParseResult<Digraph> parse_digraph(std::string_view text);
std::string serialize_digraph(const Digraph& graph);

/*
 * Flow format: lines "switch <vertex> <throughput>" and
 * "reach <vertex> <successor> <count>", order-insensitive, '#' comments,
 * missing entries are zero. Counts are arbitrary-precision decimals. The
 * canonical form lists nonzero entries only, switch lines first, in vertex
 * (then successor-position) order.
 */
ParseResult<ControlledSwitchingFlow> parse_flow(std::string_view text,
                                                const Game& game);
std::string serialize_flow(const Game& game,
                           const ControlledSwitchingFlow& flow);

/*
 * Strategy format: an optional "player reachability|safety" line, then
 * lines "move <vertex> <counters> <successor>" where <counters> is the
 * comma-separated counter vector over all switch vertices in vertex order
 * ('-' when the game has none), or '*' for positional strategies. Without
 * a player line the player is inferred from the owners of the moved
 * vertices.
 */
using ParsedStrategy = std::variant<SwitchConfigStrategy, PositionalStrategy>;
ParseResult<ParsedStrategy> parse_strategy(std::string_view text,
                                           const Game& game);
std::string serialize_strategy(const Game& game,
                               const SwitchConfigStrategy& strategy);
std::string serialize_strategy(const Game& game,
                               const PositionalStrategy& strategy);

} // namespace rsg
