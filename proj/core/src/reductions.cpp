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

#include "rsg/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace rsg {

VertexId add_counting_gadget(GameBuilder& builder, std::string name, int k,
                             VertexId a_target, VertexId b_target)
{
    if (k < 1)
        throw Error(ErrorKind::InvalidArgument,
                    "counting gadget needs k >= 1");
    const VertexId v = builder.add_vertex(std::move(name), Owner::Switch);
    std::vector<VertexId> order(static_cast<std::size_t>(k), a_target);
    order.push_back(b_target);
    builder.set_order(v, std::move(order));
    return v;
}

namespace {

void check_cnf(const CnfFormula& formula)
{
    if (formula.num_vars < 1)
        throw Error(ErrorKind::InvalidArgument,
                    "formula must have at least one variable");

    std::vector<int> occurrences(static_cast<std::size_t>(formula.num_vars) + 1,
                                 0);
    for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
        const auto& clause = formula.clauses[j];
        if (clause.empty())
            throw Error(ErrorKind::InvalidArgument,
                        "clause " + std::to_string(j + 1) + " is empty");
        if (clause.size() > 3)
            throw Error(ErrorKind::NotThreeBounded,
                        "clause " + std::to_string(j + 1) + " has " +
                            std::to_string(clause.size()) +
                            " literals (max 3)");
        for (std::size_t a = 0; a < clause.size(); ++a) {
            const int lit = clause[a];
            const int var = std::abs(lit);
            if (var < 1 || var > formula.num_vars)
                throw Error(ErrorKind::InvalidArgument,
                            "clause " + std::to_string(j + 1) +
                                " references variable " + std::to_string(var) +
                                " out of range");
            for (std::size_t b = a + 1; b < clause.size(); ++b) {
                if (clause[b] == lit)
                    throw Error(ErrorKind::InvalidArgument,
                                "clause " + std::to_string(j + 1) +
                                    " contains a duplicate literal");
                if (clause[b] == -lit)
                    throw Error(ErrorKind::InvalidArgument,
                                "clause " + std::to_string(j + 1) +
                                    " contains x" + std::to_string(var) +
                                    " and its negation");
            }
            occurrences[static_cast<std::size_t>(var)] += 1;
        }
    }
    for (int var = 1; var <= formula.num_vars; ++var) {
        if (occurrences[static_cast<std::size_t>(var)] > 3)
            throw Error(ErrorKind::NotThreeBounded,
                        "variable x" + std::to_string(var) + " occurs " +
                            std::to_string(occurrences[static_cast<std::size_t>(var)]) +
                            " times (max 3)");
    }
}

} // namespace

Game from_3sat(const CnfFormula& formula)
{
    check_cnf(formula);
    const int n = formula.num_vars;
    const int m = static_cast<int>(formula.clauses.size());

    GameBuilder builder;

    const VertexId control = builder.add_vertex("control", Owner::Switch);
    const VertexId dist = builder.add_vertex("dist", Owner::Switch);
    const VertexId fail = builder.add_vertex("fail", Owner::Reach);
    const VertexId target = builder.add_vertex("target", Owner::Reach);

    struct VarGadget
    {
        VertexId choice, true_count, true_gate, false_count, false_gate;
    };
    std::vector<VarGadget> vars;
    for (int i = 1; i <= n; ++i) {
        const std::string base = "var" + std::to_string(i);
        VarGadget gadget;
        gadget.choice = builder.add_vertex(base, Owner::Reach);
        gadget.true_count =
            builder.add_vertex(base + ".true.count", Owner::Switch);
        gadget.true_gate =
            builder.add_vertex(base + ".true.gate", Owner::Switch);
        gadget.false_count =
            builder.add_vertex(base + ".false.count", Owner::Switch);
        gadget.false_gate =
            builder.add_vertex(base + ".false.gate", Owner::Switch);
        vars.push_back(gadget);
    }

    std::vector<VertexId> clause_vertices;
    for (int j = 1; j <= m; ++j)
        clause_vertices.push_back(
            builder.add_vertex("clause" + std::to_string(j), Owner::Switch));

    // control gadget: 3n+1 passes feed the distributor, the 3n+2nd fails
    {
        std::vector<VertexId> order(static_cast<std::size_t>(3 * n + 1), dist);
        order.push_back(fail);
        builder.set_order(control, std::move(order));
    }
    {
        std::vector<VertexId> order;
        for (const VarGadget& gadget : vars)
            order.push_back(gadget.choice);
        builder.set_order(dist, std::move(order));
    }

    for (int i = 0; i < n; ++i) {
        const VarGadget& gadget = vars[static_cast<std::size_t>(i)];
        const VertexId next =
            i + 1 < n ? vars[static_cast<std::size_t>(i) + 1].choice : target;
        builder.set_successors(gadget.choice,
                               {gadget.true_count, gadget.false_count});

        // a^3 b counting gadgets: three gate visits, then the chain advances
        builder.set_order(gadget.true_count,
                          {gadget.true_gate, gadget.true_gate,
                           gadget.true_gate, next});
        builder.set_order(gadget.false_count,
                          {gadget.false_gate, gadget.false_gate,
                           gadget.false_gate, next});

        // a branch lists the clauses its assignment falsifies: clauses with
        // the negated literal sit on the true branch and vice versa
        std::vector<VertexId> true_gate_order;
        std::vector<VertexId> false_gate_order;
        for (int j = 0; j < m; ++j) {
            const auto& clause = formula.clauses[static_cast<std::size_t>(j)];
            const int var = i + 1;
            if (std::find(clause.begin(), clause.end(), -var) != clause.end())
                true_gate_order.push_back(
                    clause_vertices[static_cast<std::size_t>(j)]);
            if (std::find(clause.begin(), clause.end(), var) != clause.end())
                false_gate_order.push_back(
                    clause_vertices[static_cast<std::size_t>(j)]);
        }
        while (true_gate_order.size() < 3)
            true_gate_order.push_back(control);
        while (false_gate_order.size() < 3)
            false_gate_order.push_back(control);
        builder.set_order(gadget.true_gate, std::move(true_gate_order));
        builder.set_order(gadget.false_gate, std::move(false_gate_order));
    }

    // clause j tolerates |clause|-1 falsifying visits before failing
    for (int j = 0; j < m; ++j) {
        const std::size_t len = formula.clauses[static_cast<std::size_t>(j)].size();
        std::vector<VertexId> order(len - 1, control);
        order.push_back(fail);
        builder.set_order(clause_vertices[static_cast<std::size_t>(j)],
                          std::move(order));
    }

    builder.set_start(control);
    builder.set_target(target);
    return builder.build();
}

Game from_qbf(const QbfFormula& formula)
{
    // closed-formula checks
    std::vector<bool> quantified;
    for (const auto& [quantifier, var] : formula.prefix) {
        (void)quantifier;
        if (var < 1)
            throw Error(ErrorKind::InvalidArgument,
                        "prefix variable indices must be positive");
        if (static_cast<std::size_t>(var) >= quantified.size())
            quantified.resize(static_cast<std::size_t>(var) + 1, false);
        if (quantified[static_cast<std::size_t>(var)])
            throw Error(ErrorKind::InvalidArgument,
                        "variable x" + std::to_string(var) +
                            " is quantified twice");
        quantified[static_cast<std::size_t>(var)] = true;
    }
    std::function<void(const QbfNode&)> check_node = [&](const QbfNode& node) {
        if (node.kind == QbfNode::Kind::Lit) {
            const int var = std::abs(node.literal);
            if (var < 1 ||
                static_cast<std::size_t>(var) >= quantified.size() ||
                !quantified[static_cast<std::size_t>(var)])
                throw Error(ErrorKind::InvalidArgument,
                            "free variable x" + std::to_string(var) +
                                " in the matrix");
        }
        for (const QbfNode& child : node.children)
            check_node(child);
    };
    check_node(formula.matrix);

    GameBuilder builder;
    const VertexId target = builder.add_vertex("target", Owner::Reach);
    const VertexId fail = builder.add_vertex("fail", Owner::Reach);

    struct VarGadget
    {
        VertexId decision, pos, neg, phase;
    };
    std::vector<VarGadget> gadgets;
    for (const auto& [quantifier, var] : formula.prefix) {
        const std::string idx = std::to_string(var);
        VarGadget gadget;
        gadget.decision = builder.add_vertex(
            "d" + idx, quantifier == Quantifier::Exists ? Owner::Reach
                                                        : Owner::Safety);
        gadget.pos = builder.add_vertex("x" + idx, Owner::Switch);
        gadget.neg = builder.add_vertex("nx" + idx, Owner::Switch);
        gadget.phase = builder.add_vertex("f" + idx, Owner::Switch);
        gadgets.push_back(gadget);
    }

    auto lit_vertex = [&](int literal) {
        const int var = std::abs(literal);
        for (std::size_t i = 0; i < formula.prefix.size(); ++i)
            if (formula.prefix[i].second == var)
                return literal > 0 ? gadgets[i].pos : gadgets[i].neg;
        throw Error(ErrorKind::InvalidArgument, "unquantified literal");
    };

    // model-checking game on the matrix parse tree; leaves are edges into
    // the literal switch vertices
    int and_counter = 0;
    int or_counter = 0;
    std::function<VertexId(const QbfNode&)> build_node =
        [&](const QbfNode& node) -> VertexId {
        if (node.kind == QbfNode::Kind::Lit)
            return lit_vertex(node.literal);
        const bool is_and = node.kind == QbfNode::Kind::And;
        const std::string name =
            is_and ? "and" + std::to_string(++and_counter)
                   : "or" + std::to_string(++or_counter);
        const VertexId v = builder.add_vertex(
            name, is_and ? Owner::Safety : Owner::Reach);
        std::vector<VertexId> succ;
        for (const QbfNode& child : node.children)
            succ.push_back(build_node(child));
        if (succ.empty()) {
            // an empty conjunction is true, an empty disjunction false
            succ.push_back(is_and ? target : fail);
        }
        builder.set_successors(v, std::move(succ));
        return v;
    };
    const VertexId matrix_entry = build_node(formula.matrix);

    for (std::size_t i = 0; i < gadgets.size(); ++i) {
        const VarGadget& gadget = gadgets[i];
        builder.set_successors(gadget.decision, {gadget.pos, gadget.neg});
        builder.set_order(gadget.pos, {gadget.phase, target});
        builder.set_order(gadget.neg, {gadget.phase, target});
        const VertexId next = i + 1 < gadgets.size()
                                  ? gadgets[i + 1].decision
                                  : matrix_entry;
        builder.set_order(gadget.phase, {next, fail});
    }

    builder.set_start(gadgets.empty() ? matrix_entry : gadgets.front().decision);
    builder.set_target(target);
    return builder.build();
}

Game from_stcon(const Digraph& graph)
{
    const int n = graph.num_vertices;
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "digraph has no vertices");
    if (graph.s < 0 || graph.s >= n || graph.t < 0 || graph.t >= n)
        throw Error(ErrorKind::InvalidArgument,
                    "s or t out of range");
    for (const auto& [u, v] : graph.edges)
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw Error(ErrorKind::InvalidArgument,
                        "edge endpoint out of range");

    GameBuilder builder;

    // layered copies (v, k), k counting up to |V|
    auto node = [&](int v, int k) {
        return static_cast<VertexId>(v * (n + 1) + k);
    };
    for (int v = 0; v < n; ++v)
        for (int k = 0; k <= n; ++k)
            builder.add_vertex("v" + std::to_string(v) + ".k" +
                                   std::to_string(k),
                               Owner::Switch);
    const VertexId fin = builder.add_vertex("fin", Owner::Reach);

    std::vector<std::vector<int>> successors(static_cast<std::size_t>(n));
    for (const auto& [u, v] : graph.edges)
        successors[static_cast<std::size_t>(u)].push_back(v);

    const VertexId restart = node(graph.s, 0);
    for (int v = 0; v < n; ++v) {
        for (int k = 0; k <= n; ++k) {
            if (v == graph.t) {
                builder.set_order(node(v, k), {fin});
                continue;
            }
            if (k == n || successors[static_cast<std::size_t>(v)].empty()) {
                // counter exhausted or nowhere to go: back to the start
                builder.set_order(node(v, k), {restart});
                continue;
            }
            std::vector<VertexId> order;
            for (int u : successors[static_cast<std::size_t>(v)])
                order.push_back(node(u, k + 1));
            builder.set_order(node(v, k), std::move(order));
        }
    }

    builder.set_start(restart);
    builder.set_target(fin);
    return builder.build();
}

Game memory_game(int n, bool swap_players)
{
    if (n < 1)
        throw Error(ErrorKind::InvalidArgument, "memory_game needs n >= 1");

    const Owner setter = swap_players ? Owner::Reach : Owner::Safety;
    const Owner replier = swap_players ? Owner::Safety : Owner::Reach;

    GameBuilder builder;
    const VertexId target = builder.add_vertex("target", Owner::Reach);
    const VertexId fail = builder.add_vertex("fail", Owner::Reach);

    struct Gadget
    {
        VertexId x, y, a, b, c;
    };
    std::vector<Gadget> gadgets;
    for (int i = 1; i <= n; ++i) {
        const std::string idx = std::to_string(i);
        Gadget gadget;
        gadget.x = builder.add_vertex("x" + idx, setter);
        gadget.y = builder.add_vertex("y" + idx, replier);
        gadget.a = builder.add_vertex("a" + idx, Owner::Switch);
        gadget.b = builder.add_vertex("b" + idx, Owner::Switch);
        gadget.c = builder.add_vertex("c" + idx, Owner::Switch);
        gadgets.push_back(gadget);
    }
    const VertexId pick = builder.add_vertex("pick", setter);

    for (std::size_t i = 0; i < gadgets.size(); ++i) {
        const Gadget& gadget = gadgets[i];
        const VertexId next =
            i + 1 < gadgets.size() ? gadgets[i + 1].x : pick;
        builder.set_successors(gadget.x, {gadget.a, gadget.b});
        builder.set_successors(gadget.y, {gadget.a, gadget.b});
        // first visit feeds the chain, the second reveals the match
        builder.set_order(gadget.a, {gadget.c, target});
        builder.set_order(gadget.b, {gadget.c, target});
        builder.set_order(gadget.c, {next, fail});
    }

    std::vector<VertexId> replies;
    for (const Gadget& gadget : gadgets)
        replies.push_back(gadget.y);
    builder.set_successors(pick, std::move(replies));

    builder.set_start(gadgets.front().x);
    builder.set_target(target);
    return builder.build();
}

} // namespace rsg
