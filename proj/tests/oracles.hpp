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

// Brute-force oracles and seeded instance generators used by the unit and
// acceptance suites. Everything here is deliberately independent of the
// solver implementations it cross-checks.

#pragma once

#include <cstdlib>
#include <functional>
#include <random>
#include <unordered_set>
#include <vector>

#include "rsg/game.hpp"
#include "rsg/reductions.hpp"
#include "rsg/twoplayer.hpp"

namespace rsg::oracles {

/// Satisfiability by enumeration of all assignments.
inline bool brute_force_sat(const CnfFormula& formula)
{
    const int n = formula.num_vars;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        bool all = true;
        for (const auto& clause : formula.clauses) {
            bool sat = false;
            for (int literal : clause) {
                const int var = std::abs(literal);
                const bool value = (mask >> (var - 1)) & 1;
                if ((literal > 0) == value) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    }
    return false;
}

inline bool eval_qbf_node(const QbfNode& node, const std::vector<bool>& values)
{
    switch (node.kind) {
    case QbfNode::Kind::Lit: {
        const int var = std::abs(node.literal);
        const bool value = values[static_cast<std::size_t>(var)];
        return node.literal > 0 ? value : !value;
    }
    case QbfNode::Kind::And:
        for (const QbfNode& child : node.children)
            if (!eval_qbf_node(child, values))
                return false;
        return true;
    case QbfNode::Kind::Or:
        for (const QbfNode& child : node.children)
            if (eval_qbf_node(child, values))
                return true;
        return false;
    }
    return false;
}

/// Truth by recursive quantifier expansion.
inline bool brute_force_qbf(const QbfFormula& formula)
{
    int max_var = 0;
    for (const auto& [q, var] : formula.prefix)
        max_var = std::max(max_var, var);
    std::vector<bool> values(static_cast<std::size_t>(max_var) + 1, false);

    std::function<bool(std::size_t)> expand = [&](std::size_t i) -> bool {
        if (i == formula.prefix.size())
            return eval_qbf_node(formula.matrix, values);
        const auto [quantifier, var] = formula.prefix[i];
        for (bool value : {false, true}) {
            values[static_cast<std::size_t>(var)] = value;
            const bool sub = expand(i + 1);
            if (quantifier == Quantifier::Exists && sub)
                return true;
            if (quantifier == Quantifier::ForAll && !sub)
                return false;
        }
        return quantifier == Quantifier::ForAll;
    };
    return expand(0);
}

/// Plain breadth-first s-t reachability on the digraph.
inline bool digraph_reachable(const Digraph& graph)
{
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(graph.num_vertices));
    for (const auto& [u, v] : graph.edges)
        adj[static_cast<std::size_t>(u)].push_back(v);
    std::vector<bool> seen(static_cast<std::size_t>(graph.num_vertices), false);
    std::vector<int> queue{graph.s};
    seen[static_cast<std::size_t>(graph.s)] = true;
    while (!queue.empty()) {
        const int v = queue.back();
        queue.pop_back();
        if (v == graph.t)
            return true;
        for (int u : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                queue.push_back(u);
            }
        }
    }
    return false;
}

/**
 * Naive winning-set evaluation on a blown-up game: value iteration by play
 * depth. win[d][node] holds iff the reachability player can force arrival
 * at a target node within d steps; the fixpoint is reached after at most
 * |nodes| rounds. Independent of the backward attractor implementation.
 */
inline std::vector<bool> naive_winning_set(const BlownUpGame& bg)
{
    const std::size_t n = bg.num_nodes();
    std::vector<bool> win(n, false);
    for (std::uint32_t t : bg.target_nodes)
        win[t] = true;

    for (std::size_t round = 0; round <= n; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (win[i] || bg.out[i].empty())
                continue;
            bool joins;
            if (bg.owners[i] == Owner::Reach) {
                joins = false;
                for (std::uint32_t succ : bg.out[i])
                    joins = joins || win[succ];
            } else {
                joins = true;
                for (std::uint32_t succ : bg.out[i])
                    joins = joins && win[succ];
            }
            if (joins) {
                win[i] = true;
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    return win;
}

/// All game states reachable under every possible choice; a tiny forward
/// closure used to cross-check explorer node counts and safety verdicts.
inline std::unordered_set<GameState, GameStateHash>
enumerate_reachable_states(const Game& game, std::size_t limit = 1 << 22)
{
    std::unordered_set<GameState, GameStateHash> seen;
    std::vector<GameState> queue{game.initial_state()};
    seen.insert(queue.back());
    while (!queue.empty()) {
        const GameState state = queue.back();
        queue.pop_back();
        if (seen.size() > limit)
            throw Error(ErrorKind::StateLimitExceeded, "oracle closure too big");
        if (is_terminal(game, state) != Terminal::Live)
            continue;
        std::vector<GameState> next;
        if (game.owner(state.vertex) == Owner::Switch)
            next.push_back(successor(game, state));
        else
            for (VertexId choice : game.out(state.vertex))
                next.push_back(step_with_choice(game, state, choice));
        for (GameState& n : next)
            if (seen.insert(n).second)
                queue.push_back(n);
    }
    return seen;
}

// --- seeded instance generators -------------------------------------------

/// Random CNF within the 3SAT reduction's preconditions: at most 3
/// literals per clause, every variable in at most 3 clauses.
inline CnfFormula random_bounded_cnf(std::uint64_t seed, int max_vars = 4,
                                     int max_clauses = 4)
{
    std::mt19937_64 rng(seed);
    auto next = [&rng](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };

    for (;;) {
        CnfFormula formula;
        formula.num_vars = 1 + static_cast<int>(next(static_cast<std::uint64_t>(max_vars)));
        const int clauses = 1 + static_cast<int>(next(static_cast<std::uint64_t>(max_clauses)));
        std::vector<int> occurrences(static_cast<std::size_t>(formula.num_vars) + 1, 0);
        bool ok = true;
        for (int j = 0; j < clauses && ok; ++j) {
            const int len = 1 + static_cast<int>(next(3));
            std::vector<int> clause;
            for (int a = 0; a < len; ++a) {
                const int var = 1 + static_cast<int>(
                                        next(static_cast<std::uint64_t>(formula.num_vars)));
                const int literal = next(2) ? var : -var;
                bool dup = false;
                for (int existing : clause)
                    if (std::abs(existing) == var)
                        dup = true;
                if (dup)
                    continue;
                clause.push_back(literal);
                occurrences[static_cast<std::size_t>(var)] += 1;
            }
            if (clause.empty())
                ok = false;
            formula.clauses.push_back(std::move(clause));
        }
        for (int v = 1; v <= formula.num_vars && ok; ++v)
            if (occurrences[static_cast<std::size_t>(v)] > 3)
                ok = false;
        if (ok)
            return formula;
        // rejection sampling: reroll from the advanced rng state
    }
}

/// Random closed QBF with a bounded matrix tree.
inline QbfFormula random_qbf(std::uint64_t seed, int max_vars = 4,
                             int max_depth = 3)
{
    std::mt19937_64 rng(seed);
    auto next = [&rng](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };

    QbfFormula formula;
    const int n = 1 + static_cast<int>(next(static_cast<std::uint64_t>(max_vars)));
    for (int var = 1; var <= n; ++var)
        formula.prefix.emplace_back(
            next(2) ? Quantifier::Exists : Quantifier::ForAll, var);

    std::function<QbfNode(int)> build = [&](int depth) -> QbfNode {
        if (depth >= max_depth || next(3) == 0) {
            const int var = 1 + static_cast<int>(next(static_cast<std::uint64_t>(n)));
            return QbfNode::lit(next(2) ? var : -var);
        }
        const std::size_t arity = 2 + next(2);
        std::vector<QbfNode> children;
        for (std::size_t i = 0; i < arity; ++i)
            children.push_back(build(depth + 1));
        return next(2) ? QbfNode::conj(std::move(children))
                       : QbfNode::disj(std::move(children));
    };
    formula.matrix = build(0);
    return formula;
}

/// Random digraph with n vertices and roughly density*n*n edges.
inline Digraph random_digraph(std::uint64_t seed, int max_vertices = 8)
{
    std::mt19937_64 rng(seed);
    auto next = [&rng](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };

    Digraph graph;
    graph.num_vertices = 1 + static_cast<int>(next(static_cast<std::uint64_t>(max_vertices)));
    const std::uint64_t n = static_cast<std::uint64_t>(graph.num_vertices);
    const std::uint64_t edges = next(2 * n + 1);
    for (std::uint64_t i = 0; i < edges; ++i)
        graph.edges.emplace_back(static_cast<int>(next(n)),
                                 static_cast<int>(next(n)));
    graph.s = static_cast<int>(next(n));
    graph.t = static_cast<int>(next(n));
    return graph;
}

} // namespace rsg::oracles
