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

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "rsg/game.hpp"

namespace rsg {

/// Flow counts are arbitrary precision: certificate entries can reach n^n.
using FlowCount = boost::multiprecision::cpp_int;

/// Flow carried by position j of a switch vertex with k order positions and
/// total throughput T: with c = T / k and i = T % k, positions j < i carry
/// c + 1 and positions j >= i carry c.
FlowCount switch_position_flow(const FlowCount& throughput, std::size_t k,
                               std::size_t position);

/**
 * Integer edge flow certifying a reachability win in a one-player game.
 *
 * Reach edges carry explicit counts, indexed by (vertex, successor
 * position). A switch vertex stores only its total throughput; the
 * per-position flow is implied by the staircase rule above, which makes the
 * switching-order constraint hold by construction. Balance (net +1 at the
 * start, -1 at the target, 0 elsewhere) is checked by check_flow.
 */
class ControlledSwitchingFlow
{
public:
    ControlledSwitchingFlow() = default;

    /// All-zero flow shaped to the given game.
    explicit ControlledSwitchingFlow(const Game& game);

    bool shape_matches(const Game& game) const;

    const FlowCount& reach(VertexId v, std::size_t position) const
    {
        return reach_[v][position];
    }
    void set_reach(VertexId v, std::size_t position, FlowCount count)
    {
        reach_[v][position] = std::move(count);
    }
    void add_reach(VertexId v, std::size_t position, const FlowCount& delta)
    {
        reach_[v][position] += delta;
    }

    const FlowCount& throughput(std::size_t slot) const
    {
        return throughput_[slot];
    }
    void set_throughput(std::size_t slot, FlowCount count)
    {
        throughput_[slot] = std::move(count);
    }
    void add_throughput(std::size_t slot, const FlowCount& delta)
    {
        throughput_[slot] += delta;
    }

    std::size_t num_switch_slots() const { return throughput_.size(); }

    /// Sum of all reach counts and switch throughputs.
    FlowCount total() const;

    bool operator==(const ControlledSwitchingFlow&) const = default;

private:
    std::vector<std::vector<FlowCount>> reach_;
    std::vector<FlowCount> throughput_;
};

/// Outgoing minus incoming flow at v, counting implied per-position switch
/// flows on both sides.
FlowCount balance(const Game& game, const ControlledSwitchingFlow& flow,
                  VertexId v);

struct FlowViolation
{
    enum class Kind { ShapeMismatch, NegativeCount, Balance, NonzeroOnTrivial };

    Kind kind;
    VertexId vertex = 0;
    FlowCount got;
    FlowCount want;
    std::string message;
};

/**
 * Polynomial certificate check: counts are nonnegative and every vertex
 * balances (start +1, target -1, 0 elsewhere). When start equals target the
 * all-zero flow is the unique valid certificate.
 */
std::vector<FlowViolation> check_flow(const Game& game,
                                      const ControlledSwitchingFlow& flow);

/**
 * The traversal-count flow of a winning play: each reach edge counts its
 * uses, each switch vertex counts its visits. The play must end at the
 * target and must not repeat a state.
 */
ControlledSwitchingFlow play_to_flow(const Game& game, const Play& play);

/**
 * Edge budgets taken from a flow's reach counts. choose() picks the first
 * successor in list order with remaining budget and tallies the use.
 */
struct MarginalStrategy
{
    MarginalStrategy(const Game& game, const ControlledSwitchingFlow& flow);

    std::optional<VertexId> choose(const Game& game, VertexId v);

    std::vector<std::vector<FlowCount>> budget;
    std::vector<std::vector<FlowCount>> used;
};

/**
 * Executes the marginal strategy of a valid certificate on a one-player
 * game: at reach vertices the first successor with remaining budget is
 * taken, switch vertices follow their rotor. Every step consumes one flow
 * unit, so the returned play wins within total() transitions; for a
 * certificate extracted from a shortest winning play the transition count
 * equals the total exactly (a shorter replay would itself be a shorter
 * play). StrategyStuck signals an invalid certificate and cannot occur
 * when check_flow accepted the input.
 */
Play run_marginal(const Game& game, const ControlledSwitchingFlow& flow);

} // namespace rsg
