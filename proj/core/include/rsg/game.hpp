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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rsg/error.hpp"

namespace rsg {

/// Dense vertex index, 0..|V|-1 within its Game.
using VertexId = std::uint32_t;

enum class Owner : std::uint8_t { Reach, Safety, Switch };
enum class Player : std::uint8_t { Reachability, Safety };

const char* to_string(Owner owner);
const char* to_string(Player player);
Player opponent(Player player);

/// The owner whose vertices a player controls.
inline Owner owned_vertices(Player player)
{
    return player == Player::Reachability ? Owner::Reach : Owner::Safety;
}

/**
 * Progress of every switching vertex through its order. Counters are kept
 * in a dense vector indexed by switch slot (switch vertices numbered in
 * vertex order); the invariant counts[slot] < |order| is maintained by the
 * step functions, not by this container.
 */
class CounterMap
{
public:
    CounterMap() = default;
    explicit CounterMap(std::size_t num_switch_vertices)
        : counts_(num_switch_vertices, 0)
    {
    }

    std::uint32_t operator[](std::size_t slot) const { return counts_[slot]; }
    std::uint32_t& operator[](std::size_t slot) { return counts_[slot]; }
    std::size_t size() const { return counts_.size(); }
    const std::vector<std::uint32_t>& values() const { return counts_; }

    bool operator==(const CounterMap&) const = default;
    auto operator<=>(const CounterMap&) const = default;

private:
    std::vector<std::uint32_t> counts_;
};

/// A full game state: token position plus all switch counters.
struct GameState
{
    VertexId vertex = 0;
    CounterMap counters;

    bool operator==(const GameState&) const = default;
    auto operator<=>(const GameState&) const = default;
};

struct GameStateHash
{
    std::size_t operator()(const GameState& state) const noexcept;
};

/**
 * An immutable reachability switching game: a partitioned vertex set, one
 * outgoing list per vertex and designated start/target vertices.
 *
 * For Reach/Safety vertices the outgoing list is the successor set (order
 * is only used for deterministic iteration; parallel edges are collapsed
 * at build time). For Switch vertices it is the switching order, which may
 * repeat targets. Games are built through GameBuilder and never mutated
 * afterwards, so they are safe to share across threads.
 */
class Game
{
    friend class GameBuilder;

public:
    Game() = default;

    std::size_t num_vertices() const { return owners_.size(); }
    std::size_t num_switch_vertices() const { return switch_vertices_.size(); }

    Owner owner(VertexId v) const { return owners_[v]; }
    const std::string& name(VertexId v) const { return names_[v]; }

    /// Successor list (player vertices) or switching order (switch vertices).
    const std::vector<VertexId>& out(VertexId v) const { return out_[v]; }

    VertexId start() const { return start_; }
    VertexId target() const { return target_; }

    /// Dense index among switch vertices, or -1 for player vertices.
    int switch_slot(VertexId v) const { return slots_[v]; }
    VertexId switch_vertex(std::size_t slot) const { return switch_vertices_[slot]; }

    std::optional<VertexId> find(std::string_view name) const;

    /// The start state with all counters at zero.
    GameState initial_state() const;

    bool is_one_player() const;

    /// 2 if any Safety vertex exists, else 1 if any Reach vertex exists, else 0.
    int detect_players() const;

private:
    std::vector<Owner> owners_;
    std::vector<std::vector<VertexId>> out_;
    std::vector<std::string> names_;
    std::vector<int> slots_;
    std::vector<VertexId> switch_vertices_;
    VertexId start_ = 0;
    VertexId target_ = 0;
    std::unordered_map<std::string, VertexId> name_index_;
};

/**
 * Builder for Game values. Successor/order lists may reference vertices
 * added later. The builder never rejects ill-formed input; validate()
 * reports violations as data.
 */
class GameBuilder
{
public:
    /// Adds a vertex; an empty name is replaced by "v<index>".
    VertexId add_vertex(std::string name, Owner owner);
    VertexId add_vertex(Owner owner) { return add_vertex("", owner); }

    GameBuilder& set_successors(VertexId v, std::vector<VertexId> successors);
    GameBuilder& set_order(VertexId v, std::vector<VertexId> order);
    GameBuilder& set_start(VertexId v);
    GameBuilder& set_target(VertexId v);

    std::size_t num_vertices() const { return owners_.size(); }

    Game build() const;

private:
    std::vector<Owner> owners_;
    std::vector<std::vector<VertexId>> out_;
    std::vector<std::string> names_;
    VertexId start_ = 0;
    VertexId target_ = 0;
};

struct GameViolation
{
    enum class Kind {
        UnknownSuccessor,
        EmptyOrder,
        DuplicateName,
        InvalidName,
        InvalidStart,
        InvalidTarget,
    };

    Kind kind;
    VertexId vertex = 0;
    VertexId successor = 0;
    std::string message;
};

/// Checks all structural game invariants. Empty result means well-formed.
std::vector<GameViolation> validate(const Game& game);

enum class Terminal { Target, DeadEnd, Live };

enum class PlayOutcome { ReachedTarget, DeadEnd, CycleDetected, Truncated };

const char* to_string(PlayOutcome outcome);

/**
 * A finite (or truncated) play. states[0] is the initial state. For
 * CycleDetected the final state is bit-identical to states[repeat_index],
 * so the continuation from there is periodic.
 */
struct Play
{
    std::vector<GameState> states;
    PlayOutcome outcome = PlayOutcome::Truncated;
    std::size_t repeat_index = 0;

    std::size_t transitions() const
    {
        return states.empty() ? 0 : states.size() - 1;
    }
};

/// Returns a copy of counters with the count at v advanced modulo |order(v)|.
CounterMap update_counters(const Game& game, const CounterMap& counters, VertexId v);

/// Deterministic step at a switch vertex: follow order[count], advance count.
GameState successor(const Game& game, const GameState& state);

/// Step at a player vertex; counters are unchanged.
GameState step_with_choice(const Game& game, const GameState& state, VertexId choice);

/// Target beats DeadEnd: a play ends on arrival at target even if target
/// has outgoing edges.
Terminal is_terminal(const Game& game, const GameState& state);

/**
 * Runs the deterministic walk from the initial state. Player vertices with
 * a single successor are treated as forced moves; a player vertex with two
 * or more successors raises ChoiceRequired. Detects cycles by exact state
 * repetition and truncates after step_limit transitions when given.
 */
Play run_zero_player(const Game& game,
                     std::optional<std::uint64_t> step_limit = std::nullopt);

/// |V| * prod |order(v)|, saturating at `cap`.
std::uint64_t state_space_size(const Game& game,
                               std::uint64_t cap = UINT64_MAX);

} // namespace rsg
