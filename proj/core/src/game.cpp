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

#include "rsg/game.hpp"

#include <algorithm>
#include <unordered_set>

namespace rsg {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotASwitchVertex: return "NotASwitchVertex";
    case ErrorKind::NotAPlayerVertex: return "NotAPlayerVertex";
    case ErrorKind::IllegalChoice: return "IllegalChoice";
    case ErrorKind::ChoiceRequired: return "ChoiceRequired";
    case ErrorKind::NotOnePlayer: return "NotOnePlayer";
    case ErrorKind::NotWinningPlay: return "NotWinningPlay";
    case ErrorKind::RepeatedState: return "RepeatedState";
    case ErrorKind::StrategyStuck: return "StrategyStuck";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::StateLimitExceeded: return "StateLimitExceeded";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::UndefinedMove: return "UndefinedMove";
    case ErrorKind::NotThreeBounded: return "NotThreeBounded";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

const char* to_string(Owner owner)
{
    switch (owner) {
    case Owner::Reach: return "reach";
    case Owner::Safety: return "safety";
    case Owner::Switch: return "switch";
    }
    return "?";
}

const char* to_string(Player player)
{
    return player == Player::Reachability ? "reachability" : "safety";
}

Player opponent(Player player)
{
    return player == Player::Reachability ? Player::Safety
                                          : Player::Reachability;
}

const char* to_string(PlayOutcome outcome)
{
    switch (outcome) {
    case PlayOutcome::ReachedTarget: return "ReachedTarget";
    case PlayOutcome::DeadEnd: return "DeadEnd";
    case PlayOutcome::CycleDetected: return "CycleDetected";
    case PlayOutcome::Truncated: return "Truncated";
    }
    return "?";
}

std::size_t GameStateHash::operator()(const GameState& state) const noexcept
{
    // FNV-1a over the vertex and the counter vector
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t x) {
        h ^= x;
        h *= 1099511628211ULL;
    };
    mix(state.vertex);
    for (std::uint32_t c : state.counters.values())
        mix(c);
    return static_cast<std::size_t>(h);
}

std::optional<VertexId> Game::find(std::string_view name) const
{
    auto it = name_index_.find(std::string(name));
    if (it == name_index_.end())
        return std::nullopt;
    return it->second;
}

GameState Game::initial_state() const
{
    return GameState{start_, CounterMap(num_switch_vertices())};
}

bool Game::is_one_player() const
{
    return std::none_of(owners_.begin(), owners_.end(),
                        [](Owner o) { return o == Owner::Safety; });
}

int Game::detect_players() const
{
    bool any_reach = false;
    for (Owner o : owners_) {
        if (o == Owner::Safety)
            return 2;
        if (o == Owner::Reach)
            any_reach = true;
    }
    return any_reach ? 1 : 0;
}

VertexId GameBuilder::add_vertex(std::string name, Owner owner)
{
    VertexId id = static_cast<VertexId>(owners_.size());
    if (name.empty())
        name = "v" + std::to_string(id);
    owners_.push_back(owner);
    out_.emplace_back();
    names_.push_back(std::move(name));
    return id;
}

GameBuilder& GameBuilder::set_successors(VertexId v, std::vector<VertexId> successors)
{
    out_[v] = std::move(successors);
    return *this;
}

GameBuilder& GameBuilder::set_order(VertexId v, std::vector<VertexId> order)
{
    out_[v] = std::move(order);
    return *this;
}

GameBuilder& GameBuilder::set_start(VertexId v)
{
    start_ = v;
    return *this;
}

GameBuilder& GameBuilder::set_target(VertexId v)
{
    target_ = v;
    return *this;
}

Game GameBuilder::build() const
{
    Game game;
    game.owners_ = owners_;
    game.names_ = names_;
    game.out_ = out_;
    game.start_ = start_;
    game.target_ = target_;

    // collapse parallel edges at player vertices, keeping first occurrence
    for (VertexId v = 0; v < game.owners_.size(); ++v) {
        if (game.owners_[v] == Owner::Switch)
            continue;
        auto& succ = game.out_[v];
        std::vector<VertexId> unique;
        for (VertexId u : succ) {
            if (std::find(unique.begin(), unique.end(), u) == unique.end())
                unique.push_back(u);
        }
        succ = std::move(unique);
    }

    game.slots_.assign(game.owners_.size(), -1);
    for (VertexId v = 0; v < game.owners_.size(); ++v) {
        if (game.owners_[v] == Owner::Switch) {
            game.slots_[v] = static_cast<int>(game.switch_vertices_.size());
            game.switch_vertices_.push_back(v);
        }
    }

    for (VertexId v = 0; v < game.owners_.size(); ++v)
        game.name_index_.emplace(game.names_[v], v);

    return game;
}

namespace {

bool valid_name(const std::string& name)
{
    if (name.empty())
        return false;
    for (char ch : name) {
        bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
                  (ch >= '0' && ch <= '9') || ch == '_' || ch == '.';
        if (!ok)
            return false;
    }
    return true;
}

} // namespace

std::vector<GameViolation> validate(const Game& game)
{
    std::vector<GameViolation> violations;
    const std::size_t n = game.num_vertices();

    std::unordered_set<std::string> seen_names;
    for (VertexId v = 0; v < n; ++v) {
        const std::string& name = game.name(v);
        if (!valid_name(name)) {
            violations.push_back({GameViolation::Kind::InvalidName, v, 0,
                                  "vertex " + std::to_string(v) +
                                      " has invalid name '" + name + "'"});
        }
        if (!seen_names.insert(name).second) {
            violations.push_back({GameViolation::Kind::DuplicateName, v, 0,
                                  "vertex name '" + name + "' is not unique"});
        }
        for (VertexId u : game.out(v)) {
            if (u >= n) {
                violations.push_back(
                    {GameViolation::Kind::UnknownSuccessor, v, u,
                     "vertex '" + name + "' references unknown vertex " +
                         std::to_string(u)});
            }
        }
        if (game.owner(v) == Owner::Switch && game.out(v).empty()) {
            violations.push_back({GameViolation::Kind::EmptyOrder, v, 0,
                                  "switch vertex '" + name +
                                      "' has an empty order"});
        }
    }

    if (game.start() >= n) {
        violations.push_back({GameViolation::Kind::InvalidStart, game.start(), 0,
                              "start vertex " + std::to_string(game.start()) +
                                  " does not exist"});
    }
    if (game.target() >= n) {
        violations.push_back({GameViolation::Kind::InvalidTarget, game.target(),
                              0,
                              "target vertex " + std::to_string(game.target()) +
                                  " does not exist"});
    }
    return violations;
}

CounterMap update_counters(const Game& game, const CounterMap& counters, VertexId v)
{
    if (game.owner(v) != Owner::Switch)
        throw Error(ErrorKind::NotASwitchVertex,
                    "vertex '" + game.name(v) + "' is not a switch vertex");
    CounterMap updated = counters;
    const std::size_t slot = static_cast<std::size_t>(game.switch_slot(v));
    updated[slot] = (counters[slot] + 1) %
                    static_cast<std::uint32_t>(game.out(v).size());
    return updated;
}

GameState successor(const Game& game, const GameState& state)
{
    const VertexId v = state.vertex;
    if (game.owner(v) != Owner::Switch)
        throw Error(ErrorKind::NotASwitchVertex,
                    "vertex '" + game.name(v) +
                        "' is a player vertex; use step_with_choice");
    const auto& order = game.out(v);
    const std::size_t slot = static_cast<std::size_t>(game.switch_slot(v));
    const std::uint32_t count = state.counters[slot];
    GameState next{order[count], state.counters};
    next.counters[slot] = (count + 1) % static_cast<std::uint32_t>(order.size());
    return next;
}

GameState step_with_choice(const Game& game, const GameState& state, VertexId choice)
{
    const VertexId v = state.vertex;
    if (game.owner(v) == Owner::Switch)
        throw Error(ErrorKind::NotAPlayerVertex,
                    "vertex '" + game.name(v) + "' is a switch vertex");
    const auto& succ = game.out(v);
    if (std::find(succ.begin(), succ.end(), choice) == succ.end())
        throw Error(ErrorKind::IllegalChoice,
                    "vertex '" + game.name(choice) +
                        "' is not a successor of '" + game.name(v) + "'");
    return GameState{choice, state.counters};
}

Terminal is_terminal(const Game& game, const GameState& state)
{
    if (state.vertex == game.target())
        return Terminal::Target;
    if (game.out(state.vertex).empty())
        return Terminal::DeadEnd;
    return Terminal::Live;
}

Play run_zero_player(const Game& game, std::optional<std::uint64_t> step_limit)
{
    Play play;
    GameState state = game.initial_state();
    play.states.push_back(state);

    std::unordered_map<GameState, std::size_t, GameStateHash> seen;
    seen.emplace(state, 0);

    for (;;) {
        switch (is_terminal(game, state)) {
        case Terminal::Target:
            play.outcome = PlayOutcome::ReachedTarget;
            return play;
        case Terminal::DeadEnd:
            play.outcome = PlayOutcome::DeadEnd;
            return play;
        case Terminal::Live:
            break;
        }
        if (step_limit && play.transitions() >= *step_limit) {
            play.outcome = PlayOutcome::Truncated;
            return play;
        }

        if (game.owner(state.vertex) == Owner::Switch) {
            state = successor(game, state);
        } else {
            const auto& succ = game.out(state.vertex);
            if (succ.size() >= 2)
                throw Error(ErrorKind::ChoiceRequired,
                            "player vertex '" + game.name(state.vertex) +
                                "' has " + std::to_string(succ.size()) +
                                " successors and requires a choice");
            state = step_with_choice(game, state, succ.front());
        }

        play.states.push_back(state);
        auto [it, fresh] = seen.emplace(state, play.states.size() - 1);
        if (!fresh) {
            play.outcome = PlayOutcome::CycleDetected;
            play.repeat_index = it->second;
            return play;
        }
    }
}

std::uint64_t state_space_size(const Game& game, std::uint64_t cap)
{
    std::uint64_t size = game.num_vertices();
    if (size == 0)
        return 0;
    for (std::size_t slot = 0; slot < game.num_switch_vertices(); ++slot) {
        const std::uint64_t k = game.out(game.switch_vertex(slot)).size();
        if (k == 0)
            continue;
        if (size > cap / k)
            return cap;
        size *= k;
    }
    return std::min(size, cap);
}

} // namespace rsg
