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
#include <optional>

#include "rsg/flow.hpp"
#include "rsg/game.hpp"

namespace rsg {

struct OnePlayerVerdict
{
    Player winner = Player::Safety;
    /// Present iff the reachability player wins; accepted by check_flow.
    std::optional<ControlledSwitchingFlow> certificate;
    /// Breadth-first shortest winning play; never repeats a state.
    std::optional<Play> witness_play;
    std::uint64_t explored_states = 0;
};

/**
 * Decides a one-player game (no safety vertices) by breadth-first
 * reachability over game states: reach vertices branch over their
 * successors in list order, switch vertices step deterministically. On a
 * win the breadth-first witness play is converted into a controlled
 * switching flow certificate.
 *
 * The result is canonical: the witness is the lexicographically least play
 * among the shortest winning plays under successor-list ordering.
 */
OnePlayerVerdict solve_one_player(const Game& game,
                                  std::optional<std::uint64_t> state_limit = std::nullopt);

/**
 * Exhaustive certificate search, used as an independent cross-check oracle
 * on small instances. Certificates are enumerated by ascending total flow
 * 0..total_flow_cap and, within a total, lexicographically over counts in
 * (vertex index, successor position) order; switch throughputs take the
 * place of per-edge counts at switch vertices. The first flow passing the
 * balance conditions is returned. Incomplete beyond the cap by design.
 *
 * Two sound shortcuts keep the enumeration tractable: when the target is
 * not graph-reachable from the start no flow can balance (any flow
 * decomposes into an s-t path plus circulations), and partial count
 * assignments are pruned by per-vertex balance bounds.
 */
std::optional<ControlledSwitchingFlow>
search_flow(const Game& game, std::uint64_t total_flow_cap);

} // namespace rsg
