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

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rsg/game.hpp"

namespace rsg {

/**
 * The explicit reachability game over reachable (vertex, counters) pairs.
 * Switching determinism is compiled away: non-target switch nodes have
 * exactly one outgoing edge, player nodes branch over their choices, and
 * target nodes are terminal. Nodes are indexed in breadth-first discovery
 * order under canonical successor ordering.
 */
struct BlownUpGame
{
    std::vector<GameState> states;
    std::vector<Owner> owners;
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> target_nodes;
    std::uint32_t initial = 0;
    std::unordered_map<GameState, std::uint32_t, GameStateHash> index;

    std::size_t num_nodes() const { return states.size(); }
    std::uint64_t num_edges() const;
};

BlownUpGame blow_up(const Game& game,
                    std::optional<std::uint64_t> state_limit = std::nullopt);

/**
 * Least set of nodes from which the reachability player can force arrival
 * at a target node, with the layer (backward distance) at which each node
 * joined. Computed by backward propagation with per-node successor
 * counters, linear in the number of edges.
 */
struct AttractorResult
{
    static constexpr std::uint32_t kNoLayer = UINT32_MAX;

    std::vector<bool> in;
    std::vector<std::uint32_t> layer;
};

AttractorResult attractor(const BlownUpGame& blown_up);

/**
 * A strategy whose memory is exactly the current counter map; positional on
 * the blown-up game. Extracted winner strategies map every winning-region
 * node the player owns (plus, for the safety player, its losing attractor
 * nodes, where any move does) to a successor vertex.
 */
struct SwitchConfigStrategy
{
    Player player = Player::Reachability;
    std::unordered_map<GameState, VertexId, GameStateHash> moves;
};

/// A strategy that looks only at the current vertex and ignores counters.
struct PositionalStrategy
{
    Player player = Player::Reachability;
    std::map<VertexId, VertexId> moves;
};

struct BlowUpStats
{
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;
};

struct TwoPlayerVerdict
{
    Player winner = Player::Safety;
    SwitchConfigStrategy strategy;
    BlowUpStats stats;
};

/**
 * Decides the game by explicit blow-up plus attractor computation. The
 * reachability player wins iff the initial node lies in the attractor. The
 * extracted reach strategy picks the successor with the least attractor
 * layer (ties broken by successor list order), so the layer strictly
 * decreases along every consistent play; the safety strategy picks the
 * first successor outside the attractor.
 */
TwoPlayerVerdict solve_two_player(const Game& game,
                                  std::optional<std::uint64_t> state_limit = std::nullopt);

struct VerifyStats
{
    std::uint64_t product_nodes = 0;
    /// Longest consistent maximal play, in transitions; meaningful only
    /// when acyclic is true.
    std::uint64_t longest_play_transitions = 0;
    bool acyclic = true;
};

struct VerifyResult
{
    bool winning = false;
    std::optional<Play> counterexample;
    VerifyStats stats;
};

/**
 * Exhaustively explores every opponent response with the strategy player's
 * moves fixed. A reachability strategy wins iff every maximal consistent
 * play ends at the target (state repetition means an infinite play and is
 * a safety win); a safety strategy wins iff no consistent play reaches the
 * target. On failure the first offending play in depth-first canonical
 * order is returned.
 */
VerifyResult verify_strategy(const Game& game, const SwitchConfigStrategy& strategy,
                             std::optional<std::uint64_t> state_limit = std::nullopt);
VerifyResult verify_strategy(const Game& game, const PositionalStrategy& strategy,
                             std::optional<std::uint64_t> state_limit = std::nullopt);

struct PositionalSearch
{
    bool exists = false;
    std::optional<PositionalStrategy> strategy;
    std::uint64_t enumerated = 0;
};

/**
 * Enumerates all positional strategies of the player in canonical order
 * (vertices ascending, the last vertex's choice varying fastest) and
 * verifies each one; returns the first winner. Vertices with a single
 * successor are forced moves and do not contribute to the enumeration.
 */
PositionalSearch
exists_winning_positional(const Game& game, Player player,
                          std::optional<std::uint64_t> state_limit = std::nullopt,
                          std::uint64_t enumeration_cap = 1ULL << 20);

} // namespace rsg
