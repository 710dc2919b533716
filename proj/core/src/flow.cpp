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

#include "rsg/flow.hpp"

#include <algorithm>
#include <unordered_set>

namespace rsg {

FlowCount switch_position_flow(const FlowCount& throughput, std::size_t k,
                               std::size_t position)
{
    const FlowCount base = throughput / k;
    const FlowCount rem = throughput % k;
    return position < rem ? base + 1 : base;
}

ControlledSwitchingFlow::ControlledSwitchingFlow(const Game& game)
{
    reach_.resize(game.num_vertices());
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) == Owner::Reach)
            reach_[v].assign(game.out(v).size(), FlowCount(0));
    }
    throughput_.assign(game.num_switch_vertices(), FlowCount(0));
}

bool ControlledSwitchingFlow::shape_matches(const Game& game) const
{
    if (reach_.size() != game.num_vertices())
        return false;
    if (throughput_.size() != game.num_switch_vertices())
        return false;
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        const std::size_t want =
            game.owner(v) == Owner::Reach ? game.out(v).size() : 0;
        if (reach_[v].size() != want)
            return false;
    }
    return true;
}

FlowCount ControlledSwitchingFlow::total() const
{
    FlowCount sum = 0;
    for (const auto& counts : reach_)
        for (const FlowCount& c : counts)
            sum += c;
    for (const FlowCount& t : throughput_)
        sum += t;
    return sum;
}

namespace {

/// Net balance of every vertex in one pass over the edges.
std::vector<FlowCount> all_balances(const Game& game,
                                    const ControlledSwitchingFlow& flow)
{
    std::vector<FlowCount> bal(game.num_vertices(), FlowCount(0));
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        switch (game.owner(v)) {
        case Owner::Reach: {
            const auto& succ = game.out(v);
            for (std::size_t j = 0; j < succ.size(); ++j) {
                const FlowCount& f = flow.reach(v, j);
                bal[v] += f;
                bal[succ[j]] -= f;
            }
            break;
        }
        case Owner::Switch: {
            const auto& order = game.out(v);
            const FlowCount& t =
                flow.throughput(static_cast<std::size_t>(game.switch_slot(v)));
            bal[v] += t;
            for (std::size_t j = 0; j < order.size(); ++j)
                bal[order[j]] -= switch_position_flow(t, order.size(), j);
            break;
        }
        case Owner::Safety:
            break; // safety vertices carry no flow
        }
    }
    return bal;
}

void require_shape(const Game& game, const ControlledSwitchingFlow& flow)
{
    if (!flow.shape_matches(game))
        throw Error(ErrorKind::ShapeMismatch,
                    "flow shape does not match the game");
}

} // namespace

FlowCount balance(const Game& game, const ControlledSwitchingFlow& flow,
                  VertexId v)
{
    require_shape(game, flow);
    return all_balances(game, flow)[v];
}

std::vector<FlowViolation> check_flow(const Game& game,
                                      const ControlledSwitchingFlow& flow)
{
    std::vector<FlowViolation> violations;
    if (!flow.shape_matches(game)) {
        violations.push_back({FlowViolation::Kind::ShapeMismatch, 0, 0, 0,
                              "flow shape does not match the game"});
        return violations;
    }

    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) == Owner::Reach) {
            for (std::size_t j = 0; j < game.out(v).size(); ++j) {
                if (flow.reach(v, j) < 0)
                    violations.push_back(
                        {FlowViolation::Kind::NegativeCount, v, flow.reach(v, j),
                         0,
                         "reach(" + game.name(v) + ", " +
                             game.name(game.out(v)[j]) + ") is negative"});
            }
        } else if (game.owner(v) == Owner::Switch) {
            const FlowCount& t =
                flow.throughput(static_cast<std::size_t>(game.switch_slot(v)));
            if (t < 0)
                violations.push_back({FlowViolation::Kind::NegativeCount, v, t,
                                      0,
                                      "switch(" + game.name(v) +
                                          ") is negative"});
        }
    }
    if (!violations.empty())
        return violations;

    if (game.start() == game.target()) {
        // degenerate game: the empty flow is the only certificate
        const FlowCount total = flow.total();
        if (total != 0)
            violations.push_back(
                {FlowViolation::Kind::NonzeroOnTrivial, game.start(), total, 0,
                 "start equals target but the flow is not empty"});
        return violations;
    }

    const std::vector<FlowCount> bal = all_balances(game, flow);
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        FlowCount want = 0;
        if (v == game.start())
            want = 1;
        else if (v == game.target())
            want = -1;
        if (bal[v] != want)
            violations.push_back({FlowViolation::Kind::Balance, v, bal[v], want,
                                  "balance(" + game.name(v) + ") = " +
                                      bal[v].str() + ", expected " +
                                      want.str()});
    }
    return violations;
}

ControlledSwitchingFlow play_to_flow(const Game& game, const Play& play)
{
    if (play.outcome != PlayOutcome::ReachedTarget)
        throw Error(ErrorKind::NotWinningPlay,
                    "play does not reach the target (outcome " +
                        std::string(to_string(play.outcome)) + ")");

    std::unordered_set<GameState, GameStateHash> seen;
    for (const GameState& state : play.states) {
        if (!seen.insert(state).second)
            throw Error(ErrorKind::RepeatedState,
                        "play repeats a state at vertex '" +
                            game.name(state.vertex) + "'");
    }

    ControlledSwitchingFlow flow(game);
    for (std::size_t i = 0; i + 1 < play.states.size(); ++i) {
        const GameState& cur = play.states[i];
        const GameState& next = play.states[i + 1];
        switch (game.owner(cur.vertex)) {
        case Owner::Switch:
            flow.add_throughput(
                static_cast<std::size_t>(game.switch_slot(cur.vertex)), 1);
            break;
        case Owner::Reach: {
            const auto& succ = game.out(cur.vertex);
            const auto it = std::find(succ.begin(), succ.end(), next.vertex);
            flow.add_reach(cur.vertex,
                           static_cast<std::size_t>(it - succ.begin()), 1);
            break;
        }
        case Owner::Safety:
            throw Error(ErrorKind::NotOnePlayer,
                        "play passes through safety vertex '" +
                            game.name(cur.vertex) + "'");
        }
    }
    return flow;
}

MarginalStrategy::MarginalStrategy(const Game& game,
                                   const ControlledSwitchingFlow& flow)
{
    budget.resize(game.num_vertices());
    used.resize(game.num_vertices());
    for (VertexId v = 0; v < game.num_vertices(); ++v) {
        if (game.owner(v) != Owner::Reach)
            continue;
        budget[v].reserve(game.out(v).size());
        for (std::size_t j = 0; j < game.out(v).size(); ++j)
            budget[v].push_back(flow.reach(v, j));
        used[v].assign(game.out(v).size(), FlowCount(0));
    }
}

std::optional<VertexId> MarginalStrategy::choose(const Game& game, VertexId v)
{
    const auto& succ = game.out(v);
    for (std::size_t j = 0; j < succ.size(); ++j) {
        if (used[v][j] < budget[v][j]) {
            used[v][j] += 1;
            return succ[j];
        }
    }
    return std::nullopt;
}

Play run_marginal(const Game& game, const ControlledSwitchingFlow& flow)
{
    if (!game.is_one_player())
        throw Error(ErrorKind::NotOnePlayer,
                    "game has safety vertices; marginal strategies apply to "
                    "one-player games");
    require_shape(game, flow);

    MarginalStrategy strategy(game, flow);
    std::vector<FlowCount> switch_used(game.num_switch_vertices(), FlowCount(0));

    Play play;
    GameState state = game.initial_state();
    play.states.push_back(state);

    for (;;) {
        switch (is_terminal(game, state)) {
        case Terminal::Target:
            play.outcome = PlayOutcome::ReachedTarget;
            return play;
        case Terminal::DeadEnd:
            throw Error(ErrorKind::StrategyStuck,
                        "dead end at vertex '" + game.name(state.vertex) +
                            "' before reaching the target");
        case Terminal::Live:
            break;
        }

        if (game.owner(state.vertex) == Owner::Switch) {
            const std::size_t slot =
                static_cast<std::size_t>(game.switch_slot(state.vertex));
            if (switch_used[slot] >= flow.throughput(slot))
                throw Error(ErrorKind::StrategyStuck,
                            "switch vertex '" + game.name(state.vertex) +
                                "' has exhausted its throughput");
            switch_used[slot] += 1;
            state = successor(game, state);
        } else {
            const std::optional<VertexId> choice =
                strategy.choose(game, state.vertex);
            if (!choice)
                throw Error(ErrorKind::StrategyStuck,
                            "no budgeted edge left at vertex '" +
                                game.name(state.vertex) + "'");
            state = step_with_choice(game, state, *choice);
        }
        play.states.push_back(state);
    }
}

} // namespace rsg
