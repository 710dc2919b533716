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

#include <string>
#include <utility>
#include <vector>

#include "rsg/game.hpp"

namespace rsg {

/// CNF formula with 1-based variable indices; literals are signed indices.
struct CnfFormula
{
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

enum class Quantifier { Exists, ForAll };

/// Negation-normal-form formula tree; negations only at the leaves.
struct QbfNode
{
    enum class Kind { And, Or, Lit };

    Kind kind = Kind::Lit;
    int literal = 0; // signed variable index, Lit nodes only
    std::vector<QbfNode> children;

    static QbfNode lit(int literal)
    {
        QbfNode node;
        node.kind = Kind::Lit;
        node.literal = literal;
        return node;
    }
    static QbfNode conj(std::vector<QbfNode> children)
    {
        QbfNode node;
        node.kind = Kind::And;
        node.children = std::move(children);
        return node;
    }
    static QbfNode disj(std::vector<QbfNode> children)
    {
        QbfNode node;
        node.kind = Kind::Or;
        node.children = std::move(children);
        return node;
    }
};

struct QbfFormula
{
    std::vector<std::pair<Quantifier, int>> prefix;
    QbfNode matrix;
};

struct Digraph
{
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    int s = 0;
    int t = 0;
};

/**
 * Adds a counting gadget: one switch vertex whose order is k repetitions of
 * a_target followed by one b_target, so visits 1..k exit via a, visit k+1
 * exits via b, and the pattern then wraps. Returns the new vertex.
 */
VertexId add_counting_gadget(GameBuilder& builder, std::string name, int k,
                             VertexId a_target, VertexId b_target);

/**
 * Compiles a 3SAT instance (clauses of at most 3 literals, every variable
 * in at most 3 clauses) into a one-player game that the reachability
 * player wins iff the formula is satisfiable. Throws NotThreeBounded when
 * the occurrence restriction fails and InvalidArgument on degenerate
 * input (no variables, an empty clause, duplicate or contradictory
 * literals within a clause).
 */
Game from_3sat(const CnfFormula& formula);

/// Number of vertices from_3sat emits for n variables and m clauses.
inline std::size_t from_3sat_num_vertices(int n, int m)
{
    return 4 + 5 * static_cast<std::size_t>(n) + static_cast<std::size_t>(m);
}

/**
 * Compiles a closed QBF (prefix plus NNF matrix) into a two-player game
 * that the reachability player wins iff the formula is true. Existential
 * decisions belong to the reachability player, universal ones to the
 * safety player; the matrix is played as the propositional model-checking
 * game with Or nodes owned by reach and And nodes by safety.
 */
Game from_qbf(const QbfFormula& formula);

/**
 * Compiles directed s-t connectivity into a zero-player game on layered
 * copies (v, k), k = 0..|V|: the walk restarts at (s, 0) after |V| steps
 * (or at a dead end) and reaches the fin vertex iff t is reachable from s.
 */
Game from_stcon(const Digraph& graph);

/// Vertices emitted by from_stcon: |V|*(|V|+1) + 1.
inline std::size_t from_stcon_num_vertices(int num_vertices)
{
    const std::size_t n = static_cast<std::size_t>(num_vertices);
    return n * (n + 1) + 1;
}

/**
 * The memory lower-bound family: n choice gadgets set one at a time by the
 * safety player, a safety-owned dispatch over the gadgets' reply vertices,
 * then one reply by the reachability player which wins iff it matches the
 * gadget's setting. With swap_players the roles flip and the safety player
 * must answer with the vertex not chosen.
 */
Game memory_game(int n, bool swap_players = false);

} // namespace rsg
