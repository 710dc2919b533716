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

#include "doctest.h"

#include <map>
#include <vector>

#include "rsg/game.hpp"
#include "rsg/generate.hpp"

using namespace rsg;

namespace {

/// s(Switch, <t>), t with no successors.
Game minimal_game()
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {t});
    b.set_start(s).set_target(t);
    return b.build();
}

} // namespace

TEST_CASE("validate accepts a minimal well-formed game")
{
    CHECK(validate(minimal_game()).empty());
}

TEST_CASE("validate reports unknown successors")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    b.add_vertex("t", Owner::Reach);
    b.set_order(s, {7});
    b.set_start(s).set_target(1);
    const auto violations = validate(b.build());
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == GameViolation::Kind::UnknownSuccessor);
    CHECK(violations[0].vertex == s);
    CHECK(violations[0].successor == 7);
}

TEST_CASE("validate reports empty switch orders")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_start(s).set_target(t);
    const auto violations = validate(b.build());
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].kind == GameViolation::Kind::EmptyOrder);
    CHECK(violations[0].vertex == s);
}

TEST_CASE("validate reports duplicate names and bad designated vertices")
{
    GameBuilder b;
    b.add_vertex("s", Owner::Reach);
    b.add_vertex("s", Owner::Reach);
    b.set_start(5).set_target(6);
    const auto violations = validate(b.build());
    REQUIRE(violations.size() == 3);
    CHECK(violations[0].kind == GameViolation::Kind::DuplicateName);
    CHECK(violations[1].kind == GameViolation::Kind::InvalidStart);
    CHECK(violations[2].kind == GameViolation::Kind::InvalidTarget);
}

TEST_CASE("update_counters follows the modulo rule")
{
    GameBuilder b;
    const VertexId v2 = b.add_vertex("v2", Owner::Switch); // order length 2
    const VertexId v1 = b.add_vertex("v1", Owner::Switch); // order length 1
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(v2, {t, t});
    b.set_order(v1, {t});
    b.set_start(v2).set_target(t);
    const Game g = b.build();

    CounterMap zero(2);
    SUBCASE("increment")
    {
        const CounterMap c = update_counters(g, zero, v2);
        CHECK(c[0] == 1);
        CHECK(c[1] == 0);
    }
    SUBCASE("wrap at the order length")
    {
        CounterMap one(2);
        one[0] = 1;
        CHECK(update_counters(g, one, v2)[0] == 0);
    }
    SUBCASE("length-one orders never move")
    {
        CHECK(update_counters(g, zero, v1)[1] == 0);
    }
    SUBCASE("player vertices are rejected")
    {
        CHECK_THROWS_WITH_AS(update_counters(g, zero, t), doctest::Contains("not a switch"),
                             Error);
    }
}

TEST_CASE("successor walks the switching order")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Reach);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a, t});
    b.set_start(s).set_target(t);
    const Game g = b.build();

    GameState state = g.initial_state();
    const GameState first = successor(g, state);
    CHECK(first.vertex == a);
    CHECK(first.counters[0] == 1);

    state.counters[0] = 1;
    const GameState second = successor(g, state);
    CHECK(second.vertex == t);
    CHECK(second.counters[0] == 0);
}

TEST_CASE("successor honors repeated targets in the order")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Reach);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a, a, t});
    b.set_start(s).set_target(t);
    const Game g = b.build();

    GameState state = g.initial_state();
    state.counters[0] = 1;
    const GameState next = successor(g, state);
    CHECK(next.vertex == a);
    CHECK(next.counters[0] == 2);

    CHECK_THROWS_AS(successor(g, GameState{a, state.counters}), Error);
}

TEST_CASE("step_with_choice moves without touching counters")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Reach);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    const VertexId d = b.add_vertex("d", Owner::Reach);
    const VertexId w = b.add_vertex("w", Owner::Switch);
    b.set_successors(s, {t, d});
    b.set_order(w, {s});
    b.set_start(s).set_target(t);
    const Game g = b.build();

    const GameState state = g.initial_state();
    const GameState next = step_with_choice(g, state, t);
    CHECK(next.vertex == t);
    CHECK(next.counters == state.counters);

    CHECK_THROWS_AS(step_with_choice(g, state, w), Error);
    CHECK_THROWS_AS(step_with_choice(g, GameState{w, state.counters}, s), Error);
}

TEST_CASE("is_terminal prefers the target over dead ends")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId dead = b.add_vertex("dead", Owner::Reach);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {dead, t});
    b.set_successors(t, {s}); // target with outgoing edges is legal
    b.set_start(s).set_target(t);
    const Game g = b.build();

    CounterMap zero(1);
    CHECK(is_terminal(g, GameState{t, zero}) == Terminal::Target);
    CHECK(is_terminal(g, GameState{dead, zero}) == Terminal::DeadEnd);
    CHECK(is_terminal(g, GameState{s, zero}) == Terminal::Live);
}

TEST_CASE("run_zero_player reaches the target on the minimal game")
{
    const Play play = run_zero_player(minimal_game());
    CHECK(play.outcome == PlayOutcome::ReachedTarget);
    CHECK(play.states.size() == 2);
}

TEST_CASE("run_zero_player walks s, a, s, t on the two-switch game")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a, t});
    b.set_order(a, {s});
    b.set_start(s).set_target(t);

    const Play play = run_zero_player(b.build());
    CHECK(play.outcome == PlayOutcome::ReachedTarget);
    REQUIRE(play.states.size() == 4);
    CHECK(play.states[0].vertex == s);
    CHECK(play.states[1].vertex == a);
    CHECK(play.states[2].vertex == s);
    CHECK(play.states[3].vertex == t);
}

TEST_CASE("run_zero_player detects the two-step cycle on length-one orders")
{
    // orders of length one keep every counter at zero, so the initial
    // state already repeats after one round trip
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Switch);
    b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a});
    b.set_order(a, {s});
    b.set_start(s).set_target(2);

    const Play play = run_zero_player(b.build());
    CHECK(play.outcome == PlayOutcome::CycleDetected);
    CHECK(play.repeat_index == 0);
    CHECK(play.states.size() == 3); // s, a, s again
    CHECK(play.states.front() == play.states.back());
}

TEST_CASE("run_zero_player cycles only after the counters wrap")
{
    // doubled orders force a full counter wrap before the repeat
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Switch);
    b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a, a});
    b.set_order(a, {s, s});
    b.set_start(s).set_target(2);

    const Play play = run_zero_player(b.build());
    CHECK(play.outcome == PlayOutcome::CycleDetected);
    CHECK(play.repeat_index == 0);
    CHECK(play.states.size() == 5); // the repeat arrives at step 4
    CHECK(play.states.front() == play.states.back());
}

TEST_CASE("run_zero_player truncates at the step limit")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    const VertexId a = b.add_vertex("a", Owner::Switch);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_order(s, {a, t});
    b.set_order(a, {s});
    b.set_start(s).set_target(t);

    const Play play = run_zero_player(b.build(), 1);
    CHECK(play.outcome == PlayOutcome::Truncated);
    CHECK(play.states.size() == 2);
}

TEST_CASE("run_zero_player auto-advances forced player moves and rejects choices")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Reach);
    const VertexId t = b.add_vertex("t", Owner::Reach);
    b.set_successors(s, {t});
    b.set_start(s).set_target(t);
    CHECK(run_zero_player(b.build()).outcome == PlayOutcome::ReachedTarget);

    GameBuilder c;
    const VertexId cs = c.add_vertex("s", Owner::Reach);
    const VertexId ct = c.add_vertex("t", Owner::Reach);
    const VertexId cd = c.add_vertex("d", Owner::Reach);
    c.set_successors(cs, {ct, cd});
    c.set_start(cs).set_target(ct);
    CHECK_THROWS_AS(run_zero_player(c.build()), Error);
}

TEST_CASE("run_zero_player on start == target yields a one-state play")
{
    GameBuilder b;
    const VertexId s = b.add_vertex("s", Owner::Switch);
    b.set_order(s, {s});
    b.set_start(s).set_target(s);
    const Play play = run_zero_player(b.build());
    CHECK(play.outcome == PlayOutcome::ReachedTarget);
    CHECK(play.states.size() == 1);
}

TEST_CASE("zero-player walks are deterministic and counter-sound")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Game g = random_game({5, 0, 3, seed});
        if (!validate(g).empty())
            continue;
        const Play play = run_zero_player(g);
        const Play again = run_zero_player(g);
        REQUIRE(play.outcome == again.outcome);
        REQUIRE(play.states.size() == again.states.size());
        for (std::size_t i = 0; i < play.states.size(); ++i) {
            REQUIRE(play.states[i] == again.states[i]);
            for (std::size_t slot = 0; slot < g.num_switch_vertices(); ++slot)
                REQUIRE(play.states[i].counters[slot] <
                        g.out(g.switch_vertex(slot)).size());
        }
    }
}

TEST_CASE("zero-player walks use switch positions round-robin")
{
    // earlier positions are never behind later ones, and no pair drifts
    // more than one use apart
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Game g = random_game({4, 0, 3, seed});
        if (!validate(g).empty())
            continue;
        const Play play = run_zero_player(g, 200);

        std::map<VertexId, std::vector<std::uint64_t>> uses;
        for (std::size_t i = 0; i + 1 < play.states.size(); ++i) {
            const GameState& state = play.states[i];
            if (g.owner(state.vertex) != Owner::Switch)
                continue;
            auto& tally = uses[state.vertex];
            tally.resize(g.out(state.vertex).size(), 0);
            tally[state.counters[static_cast<std::size_t>(
                g.switch_slot(state.vertex))]] += 1;
        }
        for (const auto& [v, tally] : uses) {
            (void)v;
            for (std::size_t p = 0; p + 1 < tally.size(); ++p) {
                REQUIRE(tally[p] >= tally[p + 1]);
                REQUIRE(tally[p] - tally[p + 1] <= 1);
            }
        }
    }
}

TEST_CASE("zero-player walks resolve within the state-space bound")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Game g = random_game({4, 0, 2, seed});
        if (!validate(g).empty())
            continue;
        const Play play = run_zero_player(g);
        CHECK(play.outcome != PlayOutcome::Truncated);
        CHECK(play.transitions() <= state_space_size(g) + 1);
    }
}
