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

#include "rsg/twoplayer.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace rsg {

std::uint64_t BlownUpGame::num_edges() const
{
    std::uint64_t edges = 0;
    for (const auto& successors : out)
        edges += successors.size();
    return edges;
}

BlownUpGame blow_up(const Game& game, std::optional<std::uint64_t> state_limit)
{
    BlownUpGame bg;

    auto insert = [&](GameState state) -> std::uint32_t {
        auto [it, fresh] =
            bg.index.emplace(state, static_cast<std::uint32_t>(bg.states.size()));
        if (!fresh)
            return it->second;
        if (state_limit && bg.states.size() >= *state_limit)
            throw Error(ErrorKind::StateLimitExceeded,
                        "state limit exceeded after " +
                            std::to_string(bg.states.size()) + " nodes");
        bg.owners.push_back(game.owner(state.vertex));
        if (state.vertex == game.target())
            bg.target_nodes.push_back(
                static_cast<std::uint32_t>(bg.states.size()));
        bg.states.push_back(std::move(state));
        bg.out.emplace_back();
        return static_cast<std::uint32_t>(bg.states.size() - 1);
    };

    bg.initial = insert(game.initial_state());

    for (std::size_t head = 0; head < bg.states.size(); ++head) {
        const GameState current = bg.states[head]; // copy: the vector grows
        if (is_terminal(game, current) != Terminal::Live)
            continue;
        if (game.owner(current.vertex) == Owner::Switch) {
            const std::uint32_t id = insert(successor(game, current));
            bg.out[head].push_back(id);
        } else {
            for (VertexId choice : game.out(current.vertex)) {
                const std::uint32_t id =
                    insert(step_with_choice(game, current, choice));
                bg.out[head].push_back(id);
            }
        }
    }
    return bg;
}

AttractorResult attractor(const BlownUpGame& bg)
{
    const std::size_t n = bg.num_nodes();
    AttractorResult result;
    result.in.assign(n, false);
    result.layer.assign(n, AttractorResult::kNoLayer);

    std::vector<std::vector<std::uint32_t>> ins(n);
    std::vector<std::uint32_t> out_remaining(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        out_remaining[i] = static_cast<std::uint32_t>(bg.out[i].size());
        for (std::uint32_t succ : bg.out[i])
            ins[succ].push_back(i);
    }

    std::deque<std::uint32_t> queue;
    for (std::uint32_t t : bg.target_nodes) {
        result.in[t] = true;
        result.layer[t] = 0;
        queue.push_back(t);
    }

    while (!queue.empty()) {
        const std::uint32_t node = queue.front();
        queue.pop_front();
        for (std::uint32_t pred : ins[node]) {
            if (result.in[pred])
                continue;
            const bool joins = bg.owners[pred] == Owner::Reach
                                   ? true
                                   : --out_remaining[pred] == 0;
            if (joins) {
                result.in[pred] = true;
                result.layer[pred] = result.layer[node] + 1;
                queue.push_back(pred);
            }
        }
    }
    return result;
}

TwoPlayerVerdict solve_two_player(const Game& game,
                                  std::optional<std::uint64_t> state_limit)
{
    const BlownUpGame bg = blow_up(game, state_limit);
    const AttractorResult att = attractor(bg);

    TwoPlayerVerdict verdict;
    verdict.stats.nodes = bg.num_nodes();
    verdict.stats.edges = bg.num_edges();
    verdict.winner =
        att.in[bg.initial] ? Player::Reachability : Player::Safety;
    verdict.strategy.player = verdict.winner;

    if (verdict.winner == Player::Reachability) {
        for (std::uint32_t i = 0; i < bg.num_nodes(); ++i) {
            if (!att.in[i] || bg.owners[i] != Owner::Reach || bg.out[i].empty())
                continue;
            if (bg.states[i].vertex == game.target())
                continue;
            // least attractor layer, ties broken by successor list order
            std::uint32_t best = bg.out[i].front();
            for (std::uint32_t succ : bg.out[i])
                if (att.layer[succ] < att.layer[best])
                    best = succ;
            verdict.strategy.moves.emplace(bg.states[i],
                                           bg.states[best].vertex);
        }
    } else {
        for (std::uint32_t i = 0; i < bg.num_nodes(); ++i) {
            if (bg.owners[i] != Owner::Safety || bg.out[i].empty())
                continue;
            if (bg.states[i].vertex == game.target())
                continue;
            std::uint32_t chosen = bg.out[i].front();
            if (!att.in[i]) {
                for (std::uint32_t succ : bg.out[i]) {
                    if (!att.in[succ]) {
                        chosen = succ;
                        break;
                    }
                }
            }
            // on attractor nodes any move does; record the first successor
            verdict.strategy.moves.emplace(bg.states[i],
                                           bg.states[chosen].vertex);
        }
    }
    return verdict;
}

namespace {

/// Shared exhaustive verifier; move_of yields the strategy player's choice
/// at a state it owns, or nullopt when the strategy has no entry there.
VerifyResult
verify_impl(const Game& game, Player player,
            const std::function<std::optional<VertexId>(const GameState&)>& move_of,
            std::optional<std::uint64_t> state_limit)
{
    const Owner owned = owned_vertices(player);

    std::vector<GameState> states;
    std::unordered_map<GameState, std::uint32_t, GameStateHash> index;
    std::vector<std::vector<std::uint32_t>> children;
    std::vector<std::uint8_t> color; // 0 white, 1 grey, 2 black
    std::vector<std::uint32_t> finish_order;

    VerifyResult result;
    result.winning = true;

    auto insert = [&](GameState state) -> std::uint32_t {
        auto [it, fresh] =
            index.emplace(state, static_cast<std::uint32_t>(states.size()));
        if (!fresh)
            return it->second;
        if (state_limit && states.size() >= *state_limit)
            throw Error(ErrorKind::StateLimitExceeded,
                        "state limit exceeded after " +
                            std::to_string(states.size()) + " states");
        states.push_back(std::move(state));
        children.emplace_back();
        color.push_back(0);
        return static_cast<std::uint32_t>(states.size() - 1);
    };

    struct Frame
    {
        std::uint32_t node;
        std::size_t next_child = 0;
        bool expanded = false;
    };

    const std::uint32_t root = insert(game.initial_state());
    std::vector<Frame> stack{Frame{root}};
    color[root] = 1;

    auto path_play = [&](std::optional<std::uint32_t> extra) {
        Play play;
        for (const Frame& frame : stack)
            play.states.push_back(states[frame.node]);
        if (extra)
            play.states.push_back(states[*extra]);
        return play;
    };

    while (!stack.empty()) {
        Frame& frame = stack.back();
        const std::uint32_t node = frame.node;

        if (!frame.expanded) {
            frame.expanded = true;
            const GameState state = states[node]; // copy: the vector grows
            const Terminal terminal = is_terminal(game, state);
            if (terminal == Terminal::Target) {
                if (player == Player::Safety) {
                    result.winning = false;
                    result.counterexample = path_play(std::nullopt);
                    result.counterexample->outcome = PlayOutcome::ReachedTarget;
                    return result;
                }
            } else if (terminal == Terminal::DeadEnd) {
                if (player == Player::Reachability) {
                    result.winning = false;
                    result.counterexample = path_play(std::nullopt);
                    result.counterexample->outcome = PlayOutcome::DeadEnd;
                    return result;
                }
            } else if (game.owner(state.vertex) == owned) {
                const std::optional<VertexId> move = move_of(state);
                if (!move)
                    throw Error(ErrorKind::UndefinedMove,
                                "strategy has no move at vertex '" +
                                    game.name(state.vertex) + "'");
                const std::uint32_t id =
                    insert(step_with_choice(game, state, *move));
                children[node].push_back(id);
            } else if (game.owner(state.vertex) == Owner::Switch) {
                const std::uint32_t id = insert(successor(game, state));
                children[node].push_back(id);
            } else {
                for (VertexId choice : game.out(state.vertex)) {
                    const std::uint32_t id =
                        insert(step_with_choice(game, state, choice));
                    children[node].push_back(id);
                }
            }
        }

        if (frame.next_child == children[node].size()) {
            color[node] = 2;
            finish_order.push_back(node);
            stack.pop_back();
            continue;
        }

        const std::uint32_t child = children[node][frame.next_child++];
        if (color[child] == 1) {
            // back edge: some consistent play is infinite
            result.stats.acyclic = false;
            if (player == Player::Reachability) {
                result.winning = false;
                Play play = path_play(child);
                play.outcome = PlayOutcome::CycleDetected;
                for (std::size_t i = 0; i < stack.size(); ++i) {
                    if (stack[i].node == child) {
                        play.repeat_index = i;
                        break;
                    }
                }
                result.counterexample = std::move(play);
                return result;
            }
            continue;
        }
        if (color[child] == 2)
            continue;
        color[child] = 1;
        stack.push_back(Frame{child});
    }

    result.stats.product_nodes = states.size();
    if (result.stats.acyclic) {
        // longest consistent play via reverse-topological DP
        std::vector<std::uint64_t> longest(states.size(), 0);
        for (std::uint32_t node : finish_order)
            for (std::uint32_t child : children[node])
                longest[node] = std::max(longest[node], longest[child] + 1);
        result.stats.longest_play_transitions = longest[root];
    }
    return result;
}

} // namespace

VerifyResult verify_strategy(const Game& game,
                             const SwitchConfigStrategy& strategy,
                             std::optional<std::uint64_t> state_limit)
{
    return verify_impl(
        game, strategy.player,
        [&strategy](const GameState& state) -> std::optional<VertexId> {
            auto it = strategy.moves.find(state);
            if (it == strategy.moves.end())
                return std::nullopt;
            return it->second;
        },
        state_limit);
}

VerifyResult verify_strategy(const Game& game,
                             const PositionalStrategy& strategy,
                             std::optional<std::uint64_t> state_limit)
{
    return verify_impl(
        game, strategy.player,
        [&strategy](const GameState& state) -> std::optional<VertexId> {
            auto it = strategy.moves.find(state.vertex);
            if (it == strategy.moves.end())
                return std::nullopt;
            return it->second;
        },
        state_limit);
}

PositionalSearch exists_winning_positional(const Game& game, Player player,
                                           std::optional<std::uint64_t> state_limit,
                                           std::uint64_t enumeration_cap)
{
    const Owner owned = owned_vertices(player);

    std::vector<VertexId> forced;
    std::vector<VertexId> choice_vertices;
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) != owned)
            continue;
        if (game.out(v).size() == 1)
            forced.push_back(v);
        else if (game.out(v).size() >= 2)
            choice_vertices.push_back(v);
    }

    std::uint64_t count = 1;
    for (VertexId v : choice_vertices) {
        const std::uint64_t options = game.out(v).size();
        if (count > enumeration_cap / options) {
            count = UINT64_MAX;
            break;
        }
        count *= options;
    }
    if (count > enumeration_cap)
        throw Error(ErrorKind::EnumerationCapExceeded,
                    "positional strategy space exceeds the enumeration cap of " +
                        std::to_string(enumeration_cap));

    PositionalSearch search;
    std::vector<std::size_t> digits(choice_vertices.size(), 0);

    for (;;) {
        PositionalStrategy strategy;
        strategy.player = player;
        for (VertexId v : forced)
            strategy.moves[v] = game.out(v).front();
        for (std::size_t i = 0; i < choice_vertices.size(); ++i) {
            const VertexId v = choice_vertices[i];
            strategy.moves[v] = game.out(v)[digits[i]];
        }

        ++search.enumerated;
        if (verify_strategy(game, strategy, state_limit).winning) {
            search.exists = true;
            search.strategy = std::move(strategy);
            return search;
        }

        // odometer step, last vertex varies fastest
        std::size_t pos = digits.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] < game.out(choice_vertices[pos]).size())
                break;
            digits[pos] = 0;
            if (pos == 0)
                return search;
        }
        if (digits.empty())
            return search;
    }
}

} // namespace rsg
